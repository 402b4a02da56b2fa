#pragma once

#include "wnh/opalg/operator.hpp"

namespace wnh {

// f' for a column f of expressions in n fields. Nonlocal symbols contribute
// (df/domega) o D^{-1} o K'.
Operator frechet(const ExprVec& f, std::size_t n, Variance variance = Variance::VtoV);
Operator frechet(const Expr& f, std::size_t n);

// f'[q]; D^{-1} of inexact integrands follows `policy`.
ApplyResult directional(const ExprVec& f, const ExprVec& q, NonlocalPolicy policy = NonlocalPolicy::Permissive);
Expr directional(const Expr& f, const ExprVec& q, NonlocalPolicy policy = NonlocalPolicy::Permissive);

// A'[q]: every coefficient differentiated along q.
Operator directional(const Operator& a, const ExprVec& q, NonlocalPolicy policy = NonlocalPolicy::Permissive);

// w' formally self-adjoint.
bool helmholtz_is_variational(const ExprVec& w);

}  // namespace wnh
