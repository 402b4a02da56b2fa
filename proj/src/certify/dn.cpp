#include "wnh/certify/dn.hpp"

#include "wnh/error.hpp"
#include "wnh/ring/printer.hpp"

namespace wnh {
namespace {

Var field(std::size_t i) { return Var::jet(static_cast<std::uint32_t>(i), 0); }

void check_metric(const Matrix& g) {
    if (g.rows() != g.cols() || g.rows() == 0) throw ShapeMismatch("metric must be a nonempty square matrix");
    for (const auto& e : g.data())
        for (Var v : e.variables()) {
            if (v.kind() == VarKind::Constant) continue;
            if (v.kind() != VarKind::Jet || v.order() != 0)
                throw PreconditionError("metric entries must depend on the fields u only");
        }
}

}  // namespace

DNData dn_validate(const Matrix& g_upper) {
    check_metric(g_upper);
    const std::size_t n = g_upper.rows();
    DNData d;
    d.g_upper = g_upper;
    try {
        d.g_lower = inverse(g_upper);
    } catch (const DivisionByZero&) {
        throw PreconditionError("degenerate metric");
    }
    // dg[s](i, j) = d g_{ij} / d u^s
    std::vector<Matrix> dg;
    for (std::size_t s = 0; s < n; ++s) dg.push_back(d.g_lower.map([&](const Expr& e) { return e.partial(field(s)); }));
    d.christoffel.assign(n, Matrix(n, n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Expr s(0);
                for (std::size_t l = 0; l < n; ++l) {
                    if (g_upper(k, l).is_zero()) continue;
                    Expr t = dg[i](l, j) + dg[j](i, l) - dg[l](i, j);
                    if (!t.is_zero()) s += g_upper(k, l) * t;
                }
                d.christoffel[k](i, j) = s / Expr(2);
            }
    d.b.assign(n, Matrix(n, n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Expr s(0);
                for (std::size_t m = 0; m < n; ++m)
                    if (!g_upper(i, m).is_zero() && !d.christoffel[j](m, k).is_zero())
                        s -= g_upper(i, m) * d.christoffel[j](m, k);
                d.b[k](i, j) = s;
            }
    // R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G^i_{km} G^m_{lj} - G^i_{lm} G^m_{kj}
    const auto& g = d.christoffel;
    d.riemann.assign(n, std::vector<Matrix>(n, Matrix(n, n)));
    d.flat = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    Expr r = g[i](l, j).partial(field(k)) - g[i](k, j).partial(field(l));
                    for (std::size_t m = 0; m < n; ++m)
                        r += g[i](k, m) * g[m](l, j) - g[i](l, m) * g[m](k, j);
                    d.riemann[i][j](k, l) = r;
                    if (!r.is_zero()) {
                        d.flat = false;
                        if (k < l)
                            d.nonzero_curvature.push_back("R^" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                                          std::to_string(k + 1) + std::to_string(l + 1) + " = " +
                                                          to_string(r));
                    }
                }
    return d;
}

Operator dn_operator(const DNData& d) {
    const std::size_t n = d.g_upper.rows();
    Operator p(n, n, Variance::VstoV);
    p.add_diff(1, d.g_upper);
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Expr uk = Expr::jet(static_cast<std::uint32_t>(k), 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!d.b[k](i, j).is_zero()) m(i, j) += d.b[k](i, j) * uk;
    }
    p.add_diff(0, m);
    return p.normalized();
}

DNCanonical dn_canonical(const Matrix& g_upper, const ExprVec& psi) {
    check_metric(g_upper);
    const std::size_t n = g_upper.rows();
    if (psi.size() != n) throw ShapeMismatch("number of coordinates differs from the metric size");
    Matrix jac(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (Var v : psi[a].variables())
            if (v.kind() != VarKind::Constant && (v.kind() != VarKind::Jet || v.order() != 0))
                throw PreconditionError("coordinates must depend on the fields u only");
        for (std::size_t i = 0; i < n; ++i) jac(a, i) = psi[a].partial(field(i));
    }
    if (determinant(jac).is_zero()) throw PreconditionError("degenerate Jacobian");
    DNCanonical out;
    out.eta = jac * g_upper * jac.transpose();
    out.is_flat_chart = true;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const Expr& e = out.eta(a, b);
            bool ok = a == b ? (e == Expr(1) || e == Expr(-1)) : e.is_zero();
            if (!ok) out.is_flat_chart = false;
        }
    out.p_can = Operator(n, n, Variance::VstoV);
    out.p_can.add_diff(1, out.eta);
    out.p_can = out.p_can.normalized();
    return out;
}

}  // namespace wnh
