#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wnh/ring/expr.hpp"
#include "wnh/ring/linear.hpp"

namespace wnh {

// Number of fields referenced by e (highest field index + 1).
std::size_t field_count(const Expr& e);
std::size_t field_count(const ExprVec& v);

// Sum_{i>=j} C(i,j) (-D)^(i-j) df/du^a_i. Requires f free of nonlocal symbols.
Expr higher_euler(const Expr& f, std::uint32_t a, std::uint32_t j);
// Variational derivative, n components.
ExprVec euler(const Expr& f, std::size_t n);
ExprVec euler(const Expr& f);
// Membership in Im D: euler(f) == 0.
bool is_exact(const Expr& f);

// g with D(g) = f and no jet-free constant term. Throws NotExact or
// UnsupportedAntiderivative.
Expr antiderivative(const Expr& f);

// u^a_j -> lambda * u^a_j for every jet.
Expr scale_jets(const Expr& e, const Expr& lambda);
// Integral over [0,1] in the parameter `lambda`; e must be polynomial in it.
Expr integrate_unit_interval(const Expr& e, Var lambda);
// Integral over [0,1] of e[lambda u] * lambda^shift (shift >= -1; with
// shift == -1 the jet-free part of e must vanish).
Expr homotopy_integral(const Expr& e, int shift = 0);

// D^{-1} with nonlocal symbols.
enum class NonlocalPolicy { Strict, Permissive };

struct Integral {
    Expr value;
    std::vector<std::uint32_t> created;  // symbols introduced by this call
};

// Finds g, polynomial in nonlocal symbols, with D(g) = f. Under the strict
// policy a non-integrable remainder throws NotExact; under the permissive
// one a fresh nonlocal symbol is introduced for it.
Integral integrate(const Expr& f, NonlocalPolicy policy);
std::optional<Expr> try_integrate(const Expr& f);

// Reduces f modulo total derivatives of terms that carry at least one
// nonlocal symbol, aiming for an equivalent local density.
struct Reduction {
    Expr remainder;
    bool local;  // remainder free of nonlocal symbols
};
Reduction reduce_modulo_image(const Expr& f);

// Scalar density modulo Im D.
class FunctionalClass {
public:
    explicit FunctionalClass(Expr density);
    const Expr& density() const { return density_; }
    bool is_zero() const { return is_exact(density_); }
    friend bool operator==(const FunctionalClass& a, const FunctionalClass& b);

private:
    Expr density_;
};

// H = int_0^1 sum_a u^a w_a[lambda u] dlambda, verified by euler(H) == w.
// Throws PreconditionError when w is not variational.
Expr reconstruct_density(const ExprVec& w);

ExprVec total_derivative(const ExprVec& v, std::uint32_t times = 1);
Expr dot(const ExprVec& a, const ExprVec& b);

}  // namespace wnh
