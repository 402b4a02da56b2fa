#include "doctest.h"

#include "wnh/geom/geom.hpp"

using namespace wnh;

namespace {
Expr u(std::uint32_t j = 0) { return Expr::jet(0, j); }
constexpr auto H = Variance::VstoV;
Operator D(std::uint32_t k = 1) { return Operator::d_power(1, k, H); }
Operator mul(const Expr& e) { return Operator::scalar(e, 1, H); }
Operator c(const Operator& a, const Operator& b) { return compose_as(a, b, H); }
Operator kdv2() { return D(3) + c(mul(2 * u()), D()) + mul(u(1)); }
}  // namespace

TEST_CASE("commutator") {
    CHECK(is_zero(commutator({u(1)}, {u(2)})));
    CHECK(is_zero(commutator({u()}, {u(1)})));
    CHECK(is_zero(commutator({u(1)}, {u() * u() * u()})));
}

TEST_CASE("lie derivative of covectors") {
    CHECK(is_zero(lie_covector({u(1)}, {u()})));
    CHECK(lie_covector({u()}, {u(1)}) == ExprVec{2 * u(1)});
    CHECK(is_zero(lie_covector({u(3)}, {Expr(0)})));
    auto r = lievar_identity_check({u(1)}, {u()});
    CHECK(r.condition_holds);
    CHECK(r.agree);
    auto f = lievar_identity_check({u()}, {u(1)});
    CHECK(!f.condition_holds);
    CHECK(f.condition == ExprVec{-2 * u(1)});
}

TEST_CASE("lie derivative of operators") {
    CHECK(lie_operator({u(1)}, D()).is_zero());
    Expr tau = -(u() * u() + u(2)) / 2;
    CHECK(equals(lie_operator({tau}, D()), kdv2()));
    Expr w = nonlocal_symbol(u());
    CHECK(equals(lie_operator({u(1) * w}, D()), c(mul(2 * u()), D()) + mul(u(1))));
    Expr tau_nl = -u(2) / 2 - Expr(Rational(3, 4)) * u() * u() - u(1) * w / 2;
    CHECK(equals(lie_operator({tau_nl}, D()), kdv2()));
    Expr q = u() * u() / 4 + u(1) * w / 2;
    CHECK(lie_operator({q}, D()).is_zero());
}

TEST_CASE("pairing and brackets") {
    CHECK(pairing({u()}, {u(1)}).is_zero());
    auto p = pairing({u(1)}, {u(1)});
    REQUIRE(!p.inconclusive());
    CHECK(!p.is_zero());
    CHECK(poisson_bracket(D(), u() * u() / 2, u() * u() / 2).is_zero());
    CHECK(poisson_bracket(D(), u() * u() / 2, u() * u() * u() / 6).is_zero());
    auto nz = poisson_bracket(D(), u(1) * u(1) / 2, u() * u() * u() / 6);
    CHECK(!nz.inconclusive());
    CHECK(!nz.is_zero());
}

TEST_CASE("schouten") {
    std::vector<ExprVec> chis = {{Expr(1)}, {u()}, {u() * u() / 2}};
    for (const auto& a : chis)
        for (const auto& b : chis)
            for (const auto& d : chis) {
                CHECK(schouten_eval(D(), D(), a, b, d).is_zero());
                CHECK(schouten_eval(D(), kdv2(), a, b, d).is_zero());
                CHECK(schouten_eval(kdv2(), kdv2(), a, b, d).is_zero());
            }
    Operator bad = c(mul(u(1)), D()) + mul(u(2) / 2);
    // alternating: equal arguments give zero
    CHECK(schouten_eval(bad, bad, {u()}, {u()}, {u()}).is_zero());
    auto r = schouten_eval(bad, bad, {Expr(1)}, {u()}, {u() * u()});
    REQUIRE(!r.inconclusive());
    CHECK(!r.is_zero());
    CHECK(euler(r.value->density()) == ExprVec{-24 * u(1) * u(1) * u(2)});
}
