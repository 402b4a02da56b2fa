#include "wnh/varcalc/frechet.hpp"

#include "wnh/error.hpp"

namespace wnh {
namespace {

std::vector<std::uint32_t> symbols_of(const ExprVec& f) {
    std::set<std::uint32_t> s;
    for (const auto& e : f)
        for (Var v : e.num().variables())
            if (v.kind() == VarKind::Nonlocal) s.insert(v.index());
    return {s.begin(), s.end()};
}

}  // namespace

Operator frechet(const ExprVec& f, std::size_t n, Variance variance) {
    Operator out(f.size(), n, variance);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (Var v : f[i].variables()) {
            if (v.kind() != VarKind::Jet) continue;
            if (v.field() >= n) throw ShapeMismatch("expression uses more fields than declared");
            Matrix m(f.size(), n);
            m(i, v.field()) = f[i].partial(v);
            out.add_diff(v.order(), m);
        }
    }
    for (auto b : symbols_of(f)) {
        ExprVec c;
        for (const auto& e : f) c.push_back(e.partial(Var::nonlocal(b)));
        Operator kp = frechet(nonlocal_density(b), n);
        Operator t = Operator::tail(c, {Expr(1)}, variance);
        out += compose_as(t, kp, variance);
    }
    return out.normalized();
}

Operator frechet(const Expr& f, std::size_t n) { return frechet(ExprVec{f}, n, Variance::VtoV); }

ApplyResult directional(const ExprVec& f, const ExprVec& q, NonlocalPolicy policy) {
    ApplyResult r{ExprVec(f.size()), {}};
    auto syms = symbols_of(f);
    std::map<std::uint32_t, Expr> integrals;
    for (auto b : syms) {
        Expr k = nonlocal_density(b);
        Expr kq(0);
        for (Var v : k.variables())
            if (v.kind() == VarKind::Jet)
                kq += k.partial(v) * total_derivative(q.at(v.field()), v.order());
        auto in = integrate(kq, policy);
        r.created.insert(r.created.end(), in.created.begin(), in.created.end());
        integrals.emplace(b, in.value);
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        Expr acc(0);
        for (Var v : f[i].variables()) {
            if (v.kind() == VarKind::Jet) {
                Expr qd = total_derivative(q.at(v.field()), v.order());
                if (!qd.is_zero()) acc += f[i].partial(v) * qd;
            } else if (v.kind() == VarKind::Nonlocal) {
                const Expr& g = integrals.at(v.index());
                if (!g.is_zero()) acc += f[i].partial(v) * g;
            }
        }
        r.value[i] = acc;
    }
    return r;
}

Expr directional(const Expr& f, const ExprVec& q, NonlocalPolicy policy) {
    return directional(ExprVec{f}, q, policy).value[0];
}

Operator directional(const Operator& a, const ExprVec& q, NonlocalPolicy policy) {
    auto d = [&](const Expr& e) { return directional(e, q, policy); };
    Operator out(a.rows(), a.cols(), a.variance());
    for (const auto& [k, m] : a.diff()) out.add_diff(k, m.map(d));
    // product rule on left o D^-1 o right
    for (const auto& t : a.tails()) {
        ExprVec dl, dr;
        for (const auto& e : t.left) dl.push_back(d(e));
        for (const auto& e : t.right) dr.push_back(d(e));
        out.add_tail({dl, t.right});
        out.add_tail({t.left, dr});
    }
    return out.normalized();
}

bool helmholtz_is_variational(const ExprVec& w) {
    for (const auto& e : w)
        if (e.has_nonlocal()) throw PreconditionError("Helmholtz test of a nonlocal covector");
    Operator f = frechet(w, w.size(), Variance::VtoVs);
    return same_action(adjoint(f), f);
}

}  // namespace wnh
