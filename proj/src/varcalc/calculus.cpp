#include "wnh/varcalc/calculus.hpp"

#include <map>

#include "wnh/error.hpp"
#include "wnh/ring/binomial.hpp"
#include "wnh/ring/printer.hpp"

namespace wnh {
namespace {

std::uint32_t jet_degree(const Monomial& m) {
    std::uint32_t d = 0;
    for (const auto& [v, e] : m.factors)
        if (v.kind() == VarKind::Jet) d += e;
    return d;
}

std::optional<std::uint32_t> homogeneous_jet_degree(const Poly& p) {
    std::optional<std::uint32_t> d;
    for (const auto& t : p.terms()) {
        auto k = jet_degree(t.mono);
        if (d && *d != k) return std::nullopt;
        d = k;
    }
    return d;
}

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(a, b); }
};
using Groups = std::map<Monomial, Expr, MonoLess>;

// Splits f by monomials in the nonlocal symbols.
Groups omega_groups(const Expr& f) {
    std::map<Monomial, std::vector<Term>, MonoLess> parts;
    for (const auto& t : f.num().terms()) {
        Monomial om, rest;
        for (const auto& fe : t.mono.factors) {
            auto& target = fe.first.kind() == VarKind::Nonlocal ? om : rest;
            target.factors.push_back(fe);
            target.degree += fe.second;
        }
        parts[om].push_back(Term{rest, t.coef});
    }
    Groups g;
    for (auto& [m, terms] : parts) g.emplace(m, Expr::fraction(Poly::from_terms(std::move(terms)), f.den()));
    return g;
}

Expr monomial_expr(const Monomial& m) { return Expr::fraction(Poly::monomial(m, Rational(1)), Poly(1)); }

std::vector<std::uint32_t> symbols_in(const Expr& f) {
    std::vector<std::uint32_t> out;
    for (Var v : f.num().variables())
        if (v.kind() == VarKind::Nonlocal) out.push_back(v.index());
    return out;
}

ExprVec padded_euler(const Expr& f, std::size_t n) { return euler(f, n); }

ExprVec concat(const std::vector<ExprVec>& blocks) {
    ExprVec out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Antiderivative, or nullopt when the density is not integrable locally.
std::optional<Expr> local_antiderivative(const Expr& f) {
    if (f.is_zero()) return Expr(0);
    if (!is_exact(f)) return std::nullopt;
    try {
        return antiderivative(f);
    } catch (const UnsupportedAntiderivative&) {
        return std::nullopt;
    }
}

// Removes the top nonlocal degree of rem: returns S whose derivative
// agrees with rem in that degree.
std::optional<Expr> top_step(const Expr& rem) {
    const std::uint32_t d = rem.nonlocal_degree();
    Groups groups = omega_groups(rem);
    std::vector<std::pair<Monomial, Expr>> top;
    for (auto& [m, a] : groups)
        if (m.degree == d) top.emplace_back(m, a);

    bool all_exact = true;
    for (const auto& [m, a] : top)
        if (!is_exact(a)) {
            all_exact = false;
            break;
        }
    Expr s(0);
    if (all_exact) {
        for (const auto& [m, a] : top) {
            auto g = local_antiderivative(a);
            if (!g) return std::nullopt;
            s += *g * monomial_expr(m);
        }
        return s;
    }

    auto syms = symbols_in(rem);
    std::size_t n = field_count(rem);
    for (auto b : syms) n = std::max(n, field_count(nonlocal_density(b)));

    // Candidates m' = m * omega_b whose derivative feeds constant multiples
    // of K_b into the block of m.
    std::vector<Monomial> candidates;
    for (const auto& [m, a] : top)
        for (auto b : syms) {
            Monomial mp = m * Monomial{{{Var::nonlocal(b), 1}}, 1};
            if (std::find(candidates.begin(), candidates.end(), mp) == candidates.end()) candidates.push_back(mp);
        }
    std::vector<ExprVec> target_blocks;
    for (const auto& [m, a] : top) target_blocks.push_back(padded_euler(a, n));
    std::vector<ExprVec> basis;
    std::vector<std::vector<std::pair<std::size_t, Expr>>> contrib;  // per candidate: (block, e_b * K_b)
    for (const auto& mp : candidates) {
        std::vector<ExprVec> blocks;
        std::vector<std::pair<std::size_t, Expr>> c;
        for (std::size_t t = 0; t < top.size(); ++t) {
            ExprVec blk(n);
            for (auto b : syms) {
                Var w = Var::nonlocal(b);
                if (mp.exponent(w) == 0) continue;
                if (mp / Monomial{{{w, 1}}, 1} == top[t].first) {
                    Expr k = Expr(static_cast<long>(mp.exponent(w))) * nonlocal_density(b);
                    blk = padded_euler(k, n);
                    c.emplace_back(t, k);
                }
            }
            blocks.push_back(blk);
        }
        basis.push_back(concat(blocks));
        contrib.push_back(std::move(c));
    }
    auto sol = constant_combination(basis, concat(target_blocks));
    if (!sol) return std::nullopt;
    std::vector<Expr> adjusted;
    for (const auto& [m, a] : top) adjusted.push_back(a);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Expr& c = (*sol)[i];
        if (c.is_zero()) continue;
        s += c * monomial_expr(candidates[i]);
        for (const auto& [t, k] : contrib[i]) adjusted[t] -= c * k;
    }
    for (std::size_t t = 0; t < top.size(); ++t) {
        auto g = local_antiderivative(adjusted[t]);
        if (!g) return std::nullopt;
        s += *g * monomial_expr(top[t].first);
    }
    return s;
}

}  // namespace

std::size_t field_count(const Expr& e) {
    std::size_t n = 0;
    for (Var v : e.variables())
        if (v.kind() == VarKind::Jet) n = std::max<std::size_t>(n, v.field() + 1);
    return n;
}

std::size_t field_count(const ExprVec& v) {
    std::size_t n = 0;
    for (const auto& e : v) n = std::max(n, field_count(e));
    return n;
}

Expr higher_euler(const Expr& f, std::uint32_t a, std::uint32_t j) {
    if (f.has_nonlocal()) throw PreconditionError("higher Euler operator applied to a nonlocal density");
    int top = f.max_order(a);
    if (top < static_cast<int>(j)) return Expr(0);
    Expr acc(0);
    for (int i = top; i >= static_cast<int>(j); --i) {
        // acc accumulates sum_{i'>=i} C(i',j) (-D)^(i'-i) d_i' f
        Expr term = f.partial(Var::jet(a, static_cast<std::uint32_t>(i)));
        acc = Expr(binomial(i, j)) * term - total_derivative(acc);
    }
    return acc;
}

ExprVec euler(const Expr& f, std::size_t n) {
    if (f.has_nonlocal()) throw PreconditionError("variational derivative of a nonlocal density");
    ExprVec out(n);
    for (std::size_t a = 0; a < n; ++a) {
        int top = f.max_order(static_cast<std::uint32_t>(a));
        Expr acc(0);
        for (int i = top; i >= 0; --i)
            acc = f.partial(Var::jet(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(i))) -
                  total_derivative(acc);
        out[a] = acc;
    }
    return out;
}

ExprVec euler(const Expr& f) { return euler(f, field_count(f)); }

bool is_exact(const Expr& f) { return is_zero(euler(f)); }

Expr homotopy_integral(const Expr& e, int shift) {
    auto dd = homogeneous_jet_degree(e.den());
    if (!dd) throw UnsupportedAntiderivative("denominator is not homogeneous in the jet variables");
    Poly num = e.num().transform([&](const Monomial& m, const Rational& c) {
        long power = static_cast<long>(jet_degree(m)) - static_cast<long>(*dd) + shift;
        if (power <= -1) throw UnsupportedAntiderivative("homotopy integral diverges at the base point");
        return Poly::monomial(m, c / Rational(power + 1));
    });
    return Expr::fraction(num, e.den());
}

Expr scale_jets(const Expr& e, const Expr& lambda) {
    if (e.has_nonlocal()) throw PreconditionError("jet scaling of a nonlocal expression");
    return substitute(e, [&](Var v) -> std::optional<Expr> {
        if (v.kind() == VarKind::Jet) return lambda * Expr::var(v);
        return std::nullopt;
    });
}

Expr integrate_unit_interval(const Expr& e, Var lambda) {
    if (e.den().contains(lambda)) throw PreconditionError("integrand is not polynomial in the parameter");
    auto coeffs = e.num().coefficients_in(lambda);
    Poly acc;
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k].scaled(Rational(1, static_cast<long>(k + 1)));
    return Expr::fraction(acc, e.den());
}

Expr antiderivative(const Expr& f) {
    if (f.has_nonlocal()) throw PreconditionError("local antiderivative of a nonlocal density");
    if (f.is_zero()) return Expr(0);
    if (!is_exact(f)) throw NotExact("not a total derivative: " + to_string(f));
    if (f.den().contains_kind(VarKind::Jet))
        throw UnsupportedAntiderivative("antiderivative of a density rational in the jets: " + to_string(f));

    const std::size_t n = field_count(f);
    Expr i_part(0);
    for (std::size_t a = 0; a < n; ++a) {
        auto fa = static_cast<std::uint32_t>(a);
        int top = f.max_order(fa);
        for (int i = 1; i <= top; ++i) {
            Expr e = higher_euler(f, fa, static_cast<std::uint32_t>(i));
            if (e.is_zero()) continue;
            i_part += total_derivative(Expr::jet(fa) * e, static_cast<std::uint32_t>(i - 1));
        }
    }
    Expr g = homotopy_integral(i_part, -1);

    Expr p0 = substitute(f, [](Var v) -> std::optional<Expr> {
        if (v.kind() == VarKind::Jet) return Expr(0);
        return std::nullopt;
    });
    if (!p0.is_zero()) {
        if (p0.den().contains(Var::x()))
            throw UnsupportedAntiderivative("x-integral of a rational function of x: " + to_string(p0));
        Poly xi = p0.num().transform([](const Monomial& m, const Rational& c) {
            std::uint32_t k = m.exponent(Var::x());
            return Poly::monomial(m * Monomial{{{Var::x(), 1}}, 1}, c / Rational(k + 1));
        });
        g += Expr::fraction(xi, p0.den());
    }
    if (total_derivative(g) != f) throw Error("antiderivative check failed for " + to_string(f));
    return g;
}

Integral integrate(const Expr& f, NonlocalPolicy policy) {
    Integral out{Expr(0), {}};
    Expr rem = f;
    while (rem.has_nonlocal()) {
        auto s = top_step(rem);
        if (!s) throw NotExact("no antiderivative in the weakly nonlocal class: " + to_string(rem));
        out.value += *s;
        Expr next = rem - total_derivative(*s);
        if (next.has_nonlocal() && next.nonlocal_degree() >= rem.nonlocal_degree())
            throw Error("nonlocal descent did not lower the degree");
        rem = next;
    }
    if (rem.is_zero()) return out;
    if (auto g = local_antiderivative(rem)) {
        out.value += *g;
        return out;
    }
    // Combination of existing densities plus an exact remainder.
    const std::size_t count = nonlocal_count();
    if (count > 0) {
        std::size_t n = field_count(rem);
        std::vector<Expr> ks;
        for (std::size_t b = 0; b < count; ++b) {
            ks.push_back(nonlocal_density(static_cast<std::uint32_t>(b)));
            n = std::max(n, field_count(ks.back()));
        }
        std::vector<ExprVec> basis;
        for (const auto& k : ks) basis.push_back(euler(k, n));
        if (auto sol = constant_combination(basis, euler(rem, n))) {
            Expr rest = rem, sym(0);
            for (std::size_t b = 0; b < count; ++b) {
                if ((*sol)[b].is_zero()) continue;
                rest -= (*sol)[b] * ks[b];
                sym += (*sol)[b] * Expr::var(Var::nonlocal(static_cast<std::uint32_t>(b)));
            }
            if (auto g = local_antiderivative(rest)) {
                out.value += sym + *g;
                return out;
            }
        }
    }
    if (policy == NonlocalPolicy::Strict) throw NotExact("no local antiderivative: " + to_string(rem));
    Rational lc = rem.num().leading().coef;
    Expr w = nonlocal_symbol(rem / Expr(lc));
    out.created.push_back(nonlocal_id(w));
    out.value += Expr(lc) * w;
    return out;
}

std::optional<Expr> try_integrate(const Expr& f) {
    try {
        return integrate(f, NonlocalPolicy::Strict).value;
    } catch (const NotExact&) {
        return std::nullopt;
    }
}

Reduction reduce_modulo_image(const Expr& f) {
    Expr rem = f;
    while (rem.has_nonlocal()) {
        auto s = top_step(rem);
        if (!s) return {rem, false};
        rem -= total_derivative(*s);
    }
    return {rem, true};
}

FunctionalClass::FunctionalClass(Expr density) : density_(std::move(density)) {
    if (density_.has_nonlocal()) throw PreconditionError("functional with a nonlocal density");
}

bool operator==(const FunctionalClass& a, const FunctionalClass& b) { return is_exact(a.density_ - b.density_); }

Expr reconstruct_density(const ExprVec& w) {
    Expr s(0);
    for (std::size_t a = 0; a < w.size(); ++a) {
        if (w[a].has_nonlocal()) throw PreconditionError("density reconstruction of a nonlocal covector");
        s += Expr::jet(static_cast<std::uint32_t>(a)) * w[a];
    }
    Expr h;
    try {
        h = homotopy_integral(s, -1);
    } catch (const UnsupportedAntiderivative& e) {
        throw PreconditionError(std::string("density reconstruction failed: ") + e.what());
    }
    if (euler(h, w.size()) != w) throw PreconditionError("covector is not a variational derivative");
    return h;
}

ExprVec total_derivative(const ExprVec& v, std::uint32_t times) {
    ExprVec out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(total_derivative(e, times));
    return out;
}

Expr dot(const ExprVec& a, const ExprVec& b) {
    if (a.size() != b.size()) throw ShapeMismatch("dot product of vectors of different length");
    Expr s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

}  // namespace wnh
