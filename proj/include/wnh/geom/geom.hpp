#pragma once

#include <optional>

#include "wnh/varcalc/frechet.hpp"

namespace wnh {

// [P, Q] = Q'[P] - P'[Q]
ExprVec commutator(const ExprVec& p, const ExprVec& q);

// L_Q(gamma) = gamma'[Q] + (Q')^dagger(gamma)
ExprVec lie_covector(const ExprVec& q, const ExprVec& gamma, NonlocalPolicy policy = NonlocalPolicy::Permissive);

// Variance-dispatched Lie derivative of an operator along Q.
Operator lie_operator(const ExprVec& q, const Operator& a);

// A functional value, or the density that could not be reduced to a local one.
struct ClassResult {
    std::optional<FunctionalClass> value;
    Expr residue;  // set when value is empty

    bool inconclusive() const { return !value.has_value(); }
    bool is_zero() const { return value && value->is_zero(); }
};

ClassResult functional_of(const Expr& density);
ClassResult pairing(const ExprVec& gamma, const ExprVec& q);
ClassResult poisson_bracket(const Operator& p, const Expr& f, const Expr& g,
                            NonlocalPolicy policy = NonlocalPolicy::Permissive);
ClassResult schouten_eval(const Operator& h, const Operator& k, const ExprVec& chi1, const ExprVec& chi2,
                          const ExprVec& chi3, NonlocalPolicy policy = NonlocalPolicy::Permissive);
ClassResult symplectic_trilinear(const Operator& j, const ExprVec& x1, const ExprVec& x2, const ExprVec& x3,
                                 NonlocalPolicy policy = NonlocalPolicy::Permissive);

struct LievarCheck {
    bool condition_holds;
    ExprVec condition;  // (gamma')^dagger(Q) - gamma'[Q]
    ExprVec lhs;        // L_Q(gamma)
    ExprVec rhs;        // delta(Q . gamma)/delta u
    bool agree;
};
LievarCheck lievar_identity_check(const ExprVec& q, const ExprVec& gamma);

}  // namespace wnh
