#include "doctest.h"

#include "wnh/error.hpp"
#include "wnh/opalg/operator.hpp"
#include "wnh/opalg/series.hpp"
#include "wnh/ring/registry.hpp"

using namespace wnh;

namespace {
Expr u(std::uint32_t j = 0) { return Expr::jet(0, j); }
Expr v(std::uint32_t j = 0) { return Expr::jet(1, j); }
constexpr auto H = Variance::VstoV;
Operator D(std::uint32_t k = 1) { return Operator::d_power(1, k, H); }
Operator mul(const Expr& e) { return Operator::scalar(e, 1, H); }
Operator tl(const Expr& f, const Expr& g) { return Operator::tail({f}, {g}, H); }
Operator c(const Operator& a, const Operator& b) { return compose_as(a, b, H); }
}  // namespace

TEST_CASE("composition basics") {
    Operator lhs = compose(D(), mul(u()).with_variance(Variance::VstoVs));
    CHECK(lhs.diff().size() == 2);
    CHECK_THROWS_AS(compose(D(), D()), ShapeMismatch);
    CHECK(equals(compose(D().with_variance(Variance::VtoV), mul(u()).with_variance(Variance::VtoV)),
                 (c(mul(u()), D()) + mul(u(1))).with_variance(Variance::VtoV)));
    CHECK((c(mul(u()), D()) + mul(u(1)) - c(D(), mul(u()))).is_zero());
}

TEST_CASE("tail composition") {
    auto a = tl(Expr(1), u()).with_variance(Variance::VtoV);
    auto b = tl(u(1), Expr(1)).with_variance(Variance::VtoV);
    auto ab = compose(a, b);
    auto expect = (Operator::tail({u() * u() / 2}, {Expr(1)}, Variance::VtoV) -
                   Operator::tail({Expr(1)}, {u() * u() / 2}, Variance::VtoV));
    CHECK(equals(ab, expect));
    // D^{-1} o (D^3 + 2uD + u_1) o D^{-1}
    auto dinv = tl(1, 1).with_variance(Variance::VtoVs);
    Operator p = (D(3) + c(mul(2 * u()), D()) + mul(u(1)));
    auto jpj = compose(compose(dinv, p), dinv);
    CHECK(jpj.variance() == Variance::VtoVs);
    auto want = (D() + tl(u(), 1) + tl(1, u())).with_variance(Variance::VtoVs);
    CHECK(equals(jpj, want));
    CHECK(to_string(jpj) == "D + tail((u); (1)) + tail((1); (u))");
    auto bad = tl(1, 1).with_variance(Variance::VtoV);
    CHECK_THROWS_AS(compose(compose(bad, mul(u(1) * u(1)).with_variance(Variance::VtoV)), bad), NotWeaklyNonlocalClosure);
}

TEST_CASE("adjoint") {
    CHECK(equals(adjoint(D()), -D()));
    Operator p = D(3) + c(mul(2 * u()), D()) + mul(u(1));
    CHECK(equals(adjoint(p), -p));
    CHECK(to_string(p) == "D^3 + 2*u*D + u_1");
    Operator t = Operator::tail({u(), v()}, {u(), v()}, H);
    CHECK(equals(adjoint(t), -t));
}

TEST_CASE("apply") {
    Operator p = D(3) + c(mul(2 * u()), D()) + mul(u(1));
    CHECK(apply(p, {Expr(1)}).value == ExprVec{u(1)});
    CHECK(apply(tl(1, 1), {u(1)}).value == ExprVec{u()});
    CHECK_THROWS_AS(apply(tl(1, 1), {u(1) * u(1)}), NotExact);
    auto r = apply(tl(1, 1), {u(1) * u(1)}, NonlocalPolicy::Permissive);
    CHECK(r.created.size() == 1);
}

TEST_CASE("normal form merges tails") {
    auto s = tl(u(), v()) + tl(2 * u(), v());
    auto n = s.normalized();
    REQUIRE(n.tails().size() == 1);
    CHECK(equals(n, tl(3 * u(), v())));
    CHECK((D() - D()).is_zero());
}

TEST_CASE("profile") {
    Operator p = D(3) + c(mul(2 * u()), D()) + mul(u(1));
    auto pr = series_profile(p);
    CHECK(*pr.degree == 3);
    CHECK(pr.nondegenerate);
    CHECK(pr.skew);
    auto q = c(mul(u()), D()) + mul(u(1) / 2);
    auto pq = series_profile(q);
    CHECK(*pq.degree == 1);
    CHECK(pq.leading(0, 0) == u());
    CHECK(pq.skew);
}

TEST_CASE("truncated expansion") {
    auto s = expand_truncated(tl(1, u()), 3);
    CHECK(to_string(s) == "u*D^-1 - u_1*D^-2 + u_2*D^-3 + O(D^-4)");
    auto t = expand_truncated(tl(u(), 1) + tl(1, u()), 2);
    CHECK(to_string(t) == "2*u*D^-1 - u_1*D^-2 + O(D^-3)");
    CHECK(to_string(expand_truncated(D(2), 4)) == "D^2");
}

TEST_CASE("truncated inversion") {
    Operator p = D(3) + c(mul(2 * u()), D()) + mul(u(1));
    auto inv = invert_truncated(p, 8 + 3);
    auto prod = multiply(expand_truncated(p, 8), inv, 8);
    CHECK(is_identity_through(prod, 8));
    auto d = invert_truncated(D(), 5);
    CHECK(to_string(d) == "D^-1 + O(D^-6)");
    auto q = c(mul(u()), D()) + mul(u(1) / 2);
    auto qi = invert_truncated(q, 9);
    CHECK(is_identity_through(multiply(expand_truncated(q, 8), qi, 8), 8));
    CHECK(qi.coefficient(-1)(0, 0) == Expr(1) / u());
}
