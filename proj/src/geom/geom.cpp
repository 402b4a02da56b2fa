#include "wnh/geom/geom.hpp"

#include "wnh/error.hpp"

namespace wnh {
namespace {

ExprVec sub(const ExprVec& a, const ExprVec& b) {
    ExprVec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

ExprVec add(const ExprVec& a, const ExprVec& b) {
    ExprVec out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

}  // namespace

ExprVec commutator(const ExprVec& p, const ExprVec& q) {
    if (p.size() != q.size()) throw ShapeMismatch("commutator of vectors of different length");
    return sub(directional(q, p).value, directional(p, q).value);
}

ExprVec lie_covector(const ExprVec& q, const ExprVec& gamma, NonlocalPolicy policy) {
    if (q.size() != gamma.size()) throw ShapeMismatch("Lie derivative: vector and covector lengths differ");
    Operator qp_dag = adjoint(frechet(q, q.size(), Variance::VtoV));
    return add(directional(gamma, q, policy).value, apply(qp_dag, gamma, policy).value);
}

Operator lie_operator(const ExprVec& q, const Operator& a) {
    const std::size_t n = q.size();
    Operator qp = frechet(q, n, Variance::VtoV);
    Operator qpd = adjoint(qp);
    Operator da = directional(a, q);
    Operator out;
    switch (a.variance()) {
        case Variance::VtoV:
            out = da - (compose(qp, a) - compose(a, qp));
            break;
        case Variance::VstoVs:
            out = da + (compose(qpd, a) - compose(a, qpd));
            break;
        case Variance::VstoV:
            out = da - compose(qp, a) - compose(a, qpd);
            break;
        case Variance::VtoVs:
            out = da + compose(qpd, a) + compose(a, qp);
            break;
    }
    return out.normalized();
}

ClassResult functional_of(const Expr& density) {
    auto r = reduce_modulo_image(density);
    if (!r.local) return {std::nullopt, r.remainder};
    return {FunctionalClass(r.remainder), Expr(0)};
}

ClassResult pairing(const ExprVec& gamma, const ExprVec& q) { return functional_of(dot(gamma, q)); }

ClassResult poisson_bracket(const Operator& p, const Expr& f, const Expr& g, NonlocalPolicy policy) {
    if (p.variance() != Variance::VstoV) throw PreconditionError("Poisson bracket needs an operator Vs->V");
    const std::size_t n = p.cols();
    ExprVec df = euler(f, n), dg = euler(g, n);
    return pairing(df, apply(p, dg, policy).value);
}

ClassResult schouten_eval(const Operator& h, const Operator& k, const ExprVec& chi1, const ExprVec& chi2,
                          const ExprVec& chi3, NonlocalPolicy policy) {
    const ExprVec* c[3] = {&chi1, &chi2, &chi3};
    Expr total(0);
    for (int s = 0; s < 3; ++s) {
        const ExprVec& a = *c[s];
        const ExprVec& b = *c[(s + 1) % 3];
        const ExprVec& d = *c[(s + 2) % 3];
        ExprVec lk = lie_covector(apply(k, a, policy).value, b, policy);
        ExprVec lh = lie_covector(apply(h, a, policy).value, b, policy);
        total += dot(apply(h, lk, policy).value, d);
        total += dot(apply(k, lh, policy).value, d);
    }
    return functional_of(total);
}

ClassResult symplectic_trilinear(const Operator& j, const ExprVec& x1, const ExprVec& x2, const ExprVec& x3,
                                 NonlocalPolicy policy) {
    const ExprVec* x[3] = {&x1, &x2, &x3};
    Expr total(0);
    for (int s = 0; s < 3; ++s) {
        Operator jp = directional(j, *x[s], policy);
        total += dot(apply(jp, *x[(s + 1) % 3], policy).value, *x[(s + 2) % 3]);
    }
    return functional_of(total);
}

LievarCheck lievar_identity_check(const ExprVec& q, const ExprVec& gamma) {
    const std::size_t n = q.size();
    Operator gp = frechet(gamma, n, Variance::VtoVs);
    LievarCheck r;
    r.condition = sub(apply(adjoint(gp), q, NonlocalPolicy::Permissive).value, directional(gamma, q).value);
    r.condition_holds = is_zero(r.condition);
    r.lhs = lie_covector(q, gamma);
    r.rhs = euler(dot(q, gamma), n);
    r.agree = r.condition_holds && r.lhs == r.rhs;
    return r;
}

}  // namespace wnh
