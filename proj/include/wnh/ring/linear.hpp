#pragma once

#include <optional>
#include <vector>

#include "wnh/ring/expr.hpp"

namespace wnh {

using ExprVec = std::vector<Expr>;

// Linear algebra over the constants (Q extended by declared constants).
// Entries may be arbitrary Exprs; "constant" means free of x, jets,
// nonlocal symbols and parameters.

// Constants c_i with sum_i c_i * basis[i] == target, if any.
std::optional<ExprVec> constant_combination(const std::vector<ExprVec>& basis, const ExprVec& target);

// Greedy maximal subset (by index) that is linearly independent over the constants.
std::vector<std::size_t> independent_subset(const std::vector<ExprVec>& vectors);

bool is_zero(const ExprVec& v);

// Exact rational Gaussian elimination: solves A x = b, returning one
// solution (free variables set to zero) or nullopt.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

}  // namespace wnh
