#include "doctest.h"

#include "wnh/error.hpp"
#include "wnh/ring/printer.hpp"
#include "wnh/ring/registry.hpp"
#include "wnh/varcalc/calculus.hpp"

using namespace wnh;

namespace {
Expr u(std::uint32_t j = 0) { return Expr::jet(0, j); }
Expr v(std::uint32_t j = 0) { return Expr::jet(1, j); }
Expr sq2() { return Expr::constant(declare_constant("sq2", 2)); }
}  // namespace

TEST_CASE("euler operator") {
    CHECK(euler(u(1) * u(1) / 2) == ExprVec{-u(2)});
    CHECK(euler((u() * u() + v() * v()) / sq2(), 2) == ExprVec{sq2() * u(), sq2() * v()});
    CHECK(is_zero(euler(total_derivative(u() * u(1)))));
    CHECK(is_exact(u() * u(1)));
    CHECK(!is_exact(u(1) * u(1)));
    CHECK(is_exact(Expr(1)));
}

TEST_CASE("higher euler") {
    CHECK(higher_euler(u(1) * u(1), 0, 1) == 2 * u(1));
    CHECK(higher_euler(u(1) * u(1), 0, 0) == -2 * u(2));
    CHECK(higher_euler(u() * u(2), 0, 2) == u());
}

TEST_CASE("antiderivative") {
    CHECK(antiderivative(u() * u(1)) == u() * u() / 2);
    CHECK(antiderivative(u(3)) == u(2));
    CHECK(antiderivative(3 * u() * u(1)) == Expr(Rational(3, 2)) * u() * u());
    CHECK(antiderivative(u(3) + 3 * u() * u(1)) == u(2) + Expr(Rational(3, 2)) * u() * u());
    CHECK(antiderivative(u(1) * u(1) + u() * u(2)) == u() * u(1));
    CHECK(antiderivative(Expr::x() * u(1) + u()) == Expr::x() * u());
    CHECK(antiderivative(Expr(1)) == Expr::x());
    CHECK_THROWS_AS(antiderivative(u(1) * u(1)), NotExact);
    CHECK_THROWS_AS(antiderivative(-u(1) / (u() * u())), UnsupportedAntiderivative);
}

TEST_CASE("scaling and unit interval") {
    Expr lam = Expr::param(0);
    CHECK(scale_jets(u(3), lam) == lam * u(3));
    CHECK(scale_jets(u() * u(2) + Expr::x(), lam) == lam * lam * u() * u(2) + Expr::x());
    CHECK_THROWS_AS(scale_jets(u() * nonlocal_symbol(u()), lam), PreconditionError);
    CHECK(integrate_unit_interval(lam * u(1), Var::param(0)) == u(1) / 2);
    CHECK(integrate_unit_interval(lam * lam * u(1) * u(1), Var::param(0)) == u(1) * u(1) / 3);
    CHECK(integrate_unit_interval(u(), Var::param(0)) == u());
}

TEST_CASE("nonlocal integration") {
    Expr w = nonlocal_symbol(u());
    // D(u_1 w) = u_2 w + u u_1
    auto g = integrate(u(2) * w + u() * u(1), NonlocalPolicy::Strict);
    CHECK(total_derivative(g.value) == u(2) * w + u() * u(1));
    // u w = D(w^2/2)
    CHECK(integrate(u() * w, NonlocalPolicy::Strict).value == w * w / 2);
    // D^{-1}(u) is the symbol itself
    CHECK(integrate(3 * u(), NonlocalPolicy::Strict).value == 3 * w);
    CHECK_THROWS_AS(integrate(u(1) * u(1) * u(1) * u(1), NonlocalPolicy::Strict), NotExact);
    auto p = integrate(u(1) * u(1) * u(1) * u(1), NonlocalPolicy::Permissive);
    CHECK(p.created.size() == 1);
    CHECK(total_derivative(p.value) == u(1) * u(1) * u(1) * u(1));
    auto r = reduce_modulo_image(u(2) * w);
    CHECK(r.local);
    CHECK(r.remainder == -u() * u(1));
}

TEST_CASE("density reconstruction") {
    CHECK(reconstruct_density({u(), v()}) == (u() * u() + v() * v()) / 2);
    CHECK(reconstruct_density({sq2() * u(), sq2() * v()}) == (u() * u() + v() * v()) / sq2());
    CHECK_THROWS_AS(reconstruct_density({u(1)}), PreconditionError);
    CHECK(FunctionalClass(u(1) * u(1)) == FunctionalClass(u(1) * u(1) + total_derivative(u() * u() * u(2))));
    CHECK(!(FunctionalClass(u(1) * u(1)) == FunctionalClass(Expr(0))));
}
