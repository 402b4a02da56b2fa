#include "doctest.h"

#include "wnh/certify/certify.hpp"
#include "wnh/certify/dn.hpp"
#include "wnh/error.hpp"
#include "wnh/ring/registry.hpp"

using namespace wnh;

namespace {
Expr u(std::uint32_t j = 0) { return Expr::jet(0, j); }
Expr v(std::uint32_t j = 0) { return Expr::jet(1, j); }
Expr w(std::uint32_t j = 0) { return Expr::jet(2, j); }
Expr sq2() { return Expr::constant(declare_constant("sq2", 2)); }
Expr half(const Expr& e) { return e / Expr(2); }
constexpr auto H = Variance::VstoV;
constexpr auto S = Variance::VtoVs;

Operator D(std::uint32_t k = 1) { return Operator::d_power(1, k, H); }
Operator mul(const Expr& e) { return Operator::scalar(e, 1, H); }
Operator kdv2() { return D(3) + compose_as(mul(2 * u()), D(), H) + mul(u(1)); }
Operator dinv() { return Operator::tail({Expr(1)}, {Expr(1)}, S); }

Operator j2() {
    Matrix m(2, 2);
    m(0, 1) = Expr(1);
    m(1, 0) = Expr(-1);
    return Operator::multiplication(m, S);
}
Operator p2() {
    Matrix m(2, 2);
    m(0, 1) = Expr(-1);
    m(1, 0) = Expr(1);
    return Operator::multiplication(m, H);
}
ExprVec y1() { return {-sq2() * v(), sq2() * u()}; }
Operator nls_pt() { return Operator::d_power(2, 1, H) + Operator::tail(y1(), y1(), H); }
Expr h1() { return (u() * u() + v() * v()) / sq2(); }
}  // namespace

TEST_CASE("homotopy potential") {
    CHECK(homotopy_potential(Operator::d_power(1, 1, S)) == ExprVec{half(u(1))});
    auto z3 = homotopy_potential(Operator::d_power(1, 3, S));
    CHECK(z3 == ExprVec{half(u(3))});
    CHECK(equals(exterior(z3), Operator::d_power(1, 3, S)));
    CHECK(homotopy_potential(j2()) == ExprVec{half(v()), -half(u())});
    CHECK_THROWS_AS(homotopy_potential(dinv()), PreconditionError);
}

TEST_CASE("symmetric tails") {
    const Expr r2 = sq2();
    auto st = symmetric_tails({{{u()}, {u()}}}, true);
    REQUIRE(st.ok);
    REQUIRE(st.terms.size() == 1);
    CHECK(st.terms[0].weight == Expr(1));
    auto bad = symmetric_tails({{{2 * u()}, {u()}}}, true);
    auto three = symmetric_tails({{{3 * u()}, {u()}}}, true);
    CHECK(bad.ok);  // sqrt(2) is declared
    REQUIRE(bad.terms.size() == 1);
    CHECK(bad.terms[0].vec == ExprVec{r2 * u()});
    CHECK(!three.ok);
    CHECK(three.reason.find("sqrt(3)") != std::string::npos);
    auto kept = symmetric_tails({{{3 * u()}, {u()}}}, false);
    REQUIRE(kept.ok);
    CHECK(kept.terms[0].weight == Expr(3));
    // u (x) D^-1 1 + 1 (x) D^-1 u has one positive and one negative weight.
    auto mixed = symmetric_tails({{{u()}, {Expr(1)}}, {{Expr(1)}, {u()}}}, false);
    REQUIRE(mixed.ok);
    REQUIRE(mixed.terms.size() == 2);
    Operator back(1, 1, S), orig(1, 1, S);
    for (const auto& t : mixed.terms) back.add_tail({{t.weight * t.vec[0]}, t.vec});
    orig.add_tail({{u()}, {Expr(1)}});
    orig.add_tail({{Expr(1)}, {u()}});
    CHECK(equals(back, orig));
    CHECK(!symmetric_tails({{{u()}, {Expr(1)}}}, false).ok);
}

TEST_CASE("symplectic certificate") {
    auto c1 = wnl_symplectic_certificate(Operator::tail({u()}, {u()}, S));
    CHECK(c1.status == Status::Verified);
    CHECK(wnh::is_zero(c1.gamma0));
    REQUIRE(c1.tail_data.size() == 1);
    CHECK(c1.tail_data[0].first == Expr(1));
    CHECK(c1.tail_data[0].second == half(u() * u()));

    Operator nls = -Operator::d_power(2, 1, S) - Operator::tail(euler(h1(), 2), euler(h1(), 2), S);
    auto c2 = wnl_symplectic_certificate(nls);
    CHECK(c2.status == Status::Verified);
    REQUIRE(c2.tail_data.size() == 1);
    CHECK(c2.tail_data[0].first == Expr(-1));
    CHECK(c2.tail_data[0].second == h1());
    CHECK(c2.gamma0 == ExprVec{-half(u(1)), -half(v(1))});
    CHECK(c2.residual.is_zero());

    auto c3 = wnl_symplectic_certificate(nls, std::vector<Expr>{h1()});
    CHECK(c3.status == Status::Verified);
    auto c4 = wnl_symplectic_certificate(nls, std::vector<Expr>{u() * u() + v() * v()});
    CHECK(c4.status == Status::NotApplicable);

    Matrix m(3, 3);
    m(0, 1) = w();
    m(1, 0) = -w();
    auto c5 = wnl_symplectic_certificate(Operator::multiplication(m, S));
    CHECK(c5.status == Status::Refuted);
    CHECK(!c5.residual.is_zero());

    CHECK_THROWS_AS(wnl_symplectic_certificate(Operator::scalar(u(), 1, S)), PreconditionError);
}

TEST_CASE("symplectic operators from densities") {
    CHECK(equals(symplectic_from_densities({u()}, {Expr(1)}, 1), dinv()));
    CHECK(equals(symplectic_from_densities({half(u() * u())}, {Expr(1)}, 1), Operator::tail({u()}, {u()}, S)));
    auto j = symplectic_from_densities({h1()}, {Expr(-1)}, 2);
    CHECK(equals(j, -1 * Operator::tail(euler(h1(), 2), euler(h1(), 2), S)));
    CHECK_THROWS_AS(symplectic_from_densities({u(1)}, {Expr(1)}, 1), PreconditionError);
    auto c = wnl_symplectic_certificate(symplectic_from_densities({u() * u(1) * u(1), u() * u()}, {Expr(1), Expr(-1)}, 1));
    CHECK(c.status == Status::Verified);
}

TEST_CASE("casimirs") {
    CHECK(casimir_check(D(), {u()})[0].casimir);
    auto r = casimir_check(kdv2(), {u()});
    CHECK(!r[0].casimir);
    CHECK(r[0].witness == ExprVec{u(1)});
    auto r2 = casimir_check(compose_as(mul(u()), D(), H) + mul(half(u(1))), {u()});
    CHECK(!r2[0].casimir);
    CHECK(r2[0].witness == ExprVec{half(u(1))});
}

TEST_CASE("jpj decomposition, KdV") {
    auto d = jpj_decompose(dinv(), kdv2());
    REQUIRE(d.status == Status::Verified);
    REQUIRE(d.k.size() == 1);
    CHECK(d.k[0] == half(u() * u()));
    CHECK(d.tails_match);
    CHECK(to_string(d.jpj) == "D + tail((u); (1)) + tail((1); (u))");
    ExprVec expect{half(u(1)) + half(u() * nonlocal_symbol(u())) + half(nonlocal_symbol(half(u() * u())))};
    CHECK(total_derivative(d.gamma) == total_derivative(expect));
}

TEST_CASE("jpj decomposition, NLS") {
    auto d = jpj_decompose(j2(), nls_pt());
    REQUIRE(d.status == Status::Verified);
    CHECK(d.k.empty());
    REQUIRE(d.h_data.size() == 1);
    CHECK(d.h_data[0].first == Expr(1));
    CHECK(d.h_data[0].second == h1());
    CHECK(d.y[0] == y1());
    Operator expect = -Operator::d_power(2, 1, S) - Operator::tail(euler(h1(), 2), euler(h1(), 2), S);
    CHECK(equals(d.jpj, expect));
    CHECK(d.tails_match);
    CHECK(d.gamma0 == ExprVec{-half(u(1)), -half(v(1))});
}

TEST_CASE("jpj decomposition, local") {
    auto d = jpj_decompose(Operator::d_power(1, 1, S), D(3));
    CHECK(d.status == Status::Verified);
    CHECK(d.jpj.is_differential());
}

TEST_CASE("compatibility certificates") {
    auto k = compatibility_certificate(D(), kdv2(), dinv());
    REQUIRE(k.status == Status::Verified);
    Expr tau = -half(u(2)) - Expr(Rational(3, 4)) * u() * u() - half(u(1) * nonlocal_symbol(u()));
    CHECK(k.tau == ExprVec{tau});

    auto n = compatibility_certificate(p2(), nls_pt(), j2());
    REQUIRE(n.status == Status::Verified);
    Expr om = nonlocal_symbol(h1());
    ExprVec expect{-half(v(1)) + half(y1()[0] * om), half(u(1)) + half(y1()[1] * om)};
    CHECK(n.tau == expect);
    CHECK(equals(lie_operator(n.tau, p2()), nls_pt()));

    auto c = compatibility_certificate(D(), D(3), dinv());
    REQUIRE(c.status == Status::Verified);
    CHECK(c.tau == ExprVec{-half(u(2))});

    CHECK_THROWS_AS(compatibility_certificate(D(), kdv2(), Operator::tail({Expr(2)}, {Expr(1)}, S)), PreconditionError);
}

TEST_CASE("hamiltonian certificates") {
    auto k = compatibility_certificate(D(), kdv2(), dinv());
    auto h = hamiltonian_pair_certificate(D(), kdv2(), dinv(), k);
    CHECK(h.status == Status::Verified);
    CHECK(h.second_order_holds);
    REQUIRE(h.m.size() == 1);
    CHECK(euler(h.m[0], 1) == ExprVec{u(2) + Expr(Rational(3, 2)) * u() * u()});

    auto n = compatibility_certificate(p2(), nls_pt(), j2());
    auto hn = hamiltonian_pair_certificate(p2(), nls_pt(), j2(), n);
    CHECK(hn.status == Status::Verified);
    CHECK(hn.residual.is_zero());

    Operator bad = compose_as(mul(u(1)), D(), H) + mul(half(u(2)));
    auto b = compatibility_certificate(D(), bad, dinv());
    auto hb = hamiltonian_pair_certificate(D(), bad, dinv(), b);
    CHECK(hb.status != Status::Verified);
}

TEST_CASE("zero order") {
    auto a = zero_order_check(j2());
    CHECK(a.form_ok);
    REQUIRE(a.certificate);
    CHECK(a.certificate->status == Status::Verified);
    Matrix m(2, 2);
    m(0, 1) = u(2);
    m(1, 0) = -u(2);
    auto b = zero_order_check(Operator::multiplication(m, S));
    CHECK(!b.form_ok);
    CHECK(!b.certificate);
    Matrix m3(3, 3);
    m3(0, 1) = w();
    m3(1, 0) = -w();
    auto c = zero_order_check(Operator::multiplication(m3, S));
    CHECK(c.form_ok);
    REQUIRE(c.certificate);
    CHECK(c.certificate->status == Status::Refuted);
    Matrix m4(2, 2);
    m4(0, 1) = u(1) * v(1);
    m4(1, 0) = -u(1) * v(1);
    CHECK(!zero_order_check(Operator::multiplication(m4, S)).form_ok);
}

TEST_CASE("dubrovin-novikov") {
    auto a = dn_validate(Matrix::identity(2));
    CHECK(a.flat);
    for (const auto& b : a.b) CHECK(b.is_zero());
    CHECK(equals(dn_operator(a), Operator::d_power(2, 1, H)));

    Matrix g1(1, 1);
    g1(0, 0) = u();
    auto b = dn_validate(g1);
    CHECK(b.flat);
    CHECK(b.b[0](0, 0) == Expr(Rational(1, 2)));
    CHECK(to_string(dn_operator(b)) == "u*D + 1/2*u_1");

    Matrix g2(2, 2);
    g2(0, 0) = Expr(1);
    g2(1, 1) = Expr(1) / (1 + u() * u());
    auto c = dn_validate(g2);
    CHECK(!c.flat);
    CHECK(!c.nonzero_curvature.empty());
    CHECK(c.riemann[0][1](0, 1) == Expr(-1) / (1 + u() * u()));

    Matrix sing(2, 2);
    sing(0, 0) = u();
    sing(0, 1) = u();
    sing(1, 0) = u();
    sing(1, 1) = u();
    CHECK_THROWS_AS(dn_validate(sing), PreconditionError);

    auto can = dn_canonical(Matrix::identity(2), {u(), v()});
    CHECK(can.is_flat_chart);
    CHECK(can.eta == Matrix::identity(2));
    Matrix g4(2, 2);
    g4(0, 0) = Expr(4);
    g4(1, 1) = Expr(1);
    auto c4 = dn_canonical(g4, {half(u()), v()});
    CHECK(c4.is_flat_chart);
    CHECK(c4.eta == Matrix::identity(2));
    CHECK(!dn_canonical(g4, {u(), v()}).is_flat_chart);
    CHECK_THROWS_AS(dn_canonical(g4, {u(), u()}), PreconditionError);
}
