#include "wnh/ring/expr.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "wnh/error.hpp"
#include "wnh/ring/registry.hpp"

namespace wnh {
namespace {


Poly conjugate(const Poly& p, Var c) {
    return p.transform([&](const Monomial& m, const Rational& coef) {
        return Poly::monomial(m, m.exponent(c) % 2 ? Rational(-coef) : coef);
    });
}

std::optional<Var> first_constant(const Poly& p) {
    for (const auto& t : p.terms())
        for (const auto& [v, e] : t.mono.factors) {
            if (v.kind() != VarKind::Constant) break;
            return v;
        }
    return std::nullopt;
}

struct NonlocalTable {
    std::shared_mutex mutex;
    std::deque<Expr> densities;
};

NonlocalTable& nonlocal_table() {
    static NonlocalTable t;
    return t;
}

}  // namespace

Expr::Expr() : Expr(Rational(0)) {}
Expr::Expr(int n) : Expr(Rational(n)) {}
Expr::Expr(long n) : Expr(Rational(n)) {}
Expr::Expr(const Rational& q) : rep_(std::make_shared<const Rep>(Rep{Poly(q), Poly(1)})) {}

Expr Expr::raw(Poly num, Poly den) { return Expr(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)})); }

Expr Expr::var(Var v) { return raw(Poly::variable(v), Poly(1)); }

Expr Expr::fraction(const Poly& num_in, const Poly& den_in) {
    if (den_in.is_zero()) throw DivisionByZero();
    Poly num = reduce_constants(num_in);
    Poly den = reduce_constants(den_in);
    if (num.is_zero()) return raw(Poly{}, Poly(1));
    if (den.is_zero()) throw DivisionByZero();
    if (den.contains_kind(VarKind::Nonlocal))
        throw PreconditionError("denominators may not contain nonlocal symbols");
    while (auto c = first_constant(den)) {
        Poly conj = conjugate(den, *c);
        num = reduce_constants(num * conj);
        den = reduce_constants(den * conj);
        if (den.is_zero()) throw DivisionByZero();
    }
    if (den.is_constant()) return raw(num.scaled(Rational(1) / den.constant_value()), Poly(1));
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
        num = *num.divide_exact(g);
        den = *den.divide_exact(g);
    }
    Rational lc = den.leading().coef;
    if (lc != 1) {
        num = num.scaled(Rational(1) / lc);
        den = den.scaled(Rational(1) / lc);
    }
    if (den.is_constant()) return raw(std::move(num), Poly(1));
    return raw(std::move(num), std::move(den));
}

Rational Expr::rational_value() const {
    if (!is_rational()) throw PreconditionError("expression is not a rational number");
    return num().constant_value() / den().constant_value();
}

bool Expr::is_constant() const {
    for (const auto& t : num().terms())
        for (const auto& f : t.mono.factors)
            if (f.first.kind() != VarKind::Constant) return false;
    return den().is_constant();
}

std::uint32_t Expr::nonlocal_degree() const {
    std::uint32_t best = 0;
    for (const auto& t : num().terms()) {
        std::uint32_t d = 0;
        for (const auto& [v, e] : t.mono.factors)
            if (v.kind() == VarKind::Nonlocal) d += e;
        best = std::max(best, d);
    }
    return best;
}

std::set<Var> Expr::variables() const {
    auto s = num().variables();
    auto d = den().variables();
    s.insert(d.begin(), d.end());
    return s;
}

int Expr::max_order(std::uint32_t field) const {
    int best = -1;
    for (Var v : variables())
        if (v.kind() == VarKind::Jet && v.field() == field) best = std::max(best, static_cast<int>(v.order()));
    return best;
}

int Expr::max_order() const {
    int best = -1;
    for (Var v : variables())
        if (v.kind() == VarKind::Jet) best = std::max(best, static_cast<int>(v.order()));
    return best;
}

Expr Expr::operator-() const { return raw(-num(), den()); }

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den() == b.den()) {
        if (a.den().is_constant()) return Expr::raw(a.num() + b.num(), Poly(1));
        return Expr::fraction(a.num() + b.num(), a.den());
    }
    return Expr::fraction(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

Expr operator-(const Expr& a, const Expr& b) {
    if (b.is_zero()) return a;
    return a + (-b);
}

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.den().is_constant() && b.den().is_constant())
        return Expr::raw(reduce_constants(a.num() * b.num()), Poly(1));
    return Expr::fraction(a.num() * b.num(), a.den() * b.den());
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return Expr();
    if (b.is_rational()) return Expr::raw(a.num().scaled(Rational(1) / b.rational_value()), a.den());
    return Expr::fraction(a.num() * b.den(), a.den() * b.num());
}

Expr Expr::pow(std::uint32_t k) const {
    Expr r(1), base = *this;
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

Expr Expr::partial(Var v) const {
    if (v.kind() == VarKind::Constant) throw PreconditionError("cannot differentiate with respect to a constant");
    Poly dn = num().derivative(v);
    if (den().is_constant()) return raw(std::move(dn), Poly(1));
    Poly dd = den().derivative(v);
    if (dd.is_zero()) return fraction(dn, den());
    return fraction(dn * den() - num() * dd, den() * den());
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.rep_ == b.rep_) return true;
    return a.num() == b.num() && a.den() == b.den();
}

namespace {

// D applied to a polynomial, as an Expr (nonlocal densities may be rational).
Expr derive_poly(const Poly& p) {
    Poly local;
    Expr nonlocal_part;
    for (Var v : p.variables()) {
        switch (v.kind()) {
            case VarKind::X:
                local += p.derivative(v);
                break;
            case VarKind::Jet:
                local += p.derivative(v) * Poly::variable(Var::jet(v.field(), v.order() + 1));
                break;
            case VarKind::Nonlocal:
                nonlocal_part += Expr::fraction(p.derivative(v), Poly(1)) * nonlocal_density(v.index());
                break;
            default:
                break;
        }
    }
    Expr out = Expr::fraction(local, Poly(1));
    return nonlocal_part.is_zero() ? out : out + nonlocal_part;
}

}  // namespace

Expr total_derivative(const Expr& e) {
    Expr dn = derive_poly(e.num());
    if (e.den().is_constant()) return dn;
    Expr den = Expr::fraction(e.den(), Poly(1));
    Expr dd = derive_poly(e.den());
    Expr n = Expr::fraction(e.num(), Poly(1));
    return (dn * den - n * dd) / (den * den);
}

Expr total_derivative(const Expr& e, std::uint32_t times) {
    Expr r = e;
    for (std::uint32_t i = 0; i < times && !r.is_zero(); ++i) r = total_derivative(r);
    return r;
}

Expr substitute(const Expr& e, const std::function<std::optional<Expr>(Var)>& image) {
    std::map<Var, std::optional<Expr>> cache;
    auto img = [&](Var v) -> const std::optional<Expr>& {
        auto it = cache.find(v);
        if (it == cache.end()) it = cache.emplace(v, image(v)).first;
        return it->second;
    };
    auto apply = [&](const Poly& p) {
        Expr acc;
        for (const auto& t : p.terms()) {
            Expr term(t.coef);
            Monomial kept;
            for (const auto& [v, k] : t.mono.factors) {
                const auto& r = img(v);
                if (r) {
                    term *= r->pow(k);
                } else {
                    kept.factors.emplace_back(v, k);
                    kept.degree += k;
                }
            }
            if (!kept.is_one()) term *= Expr::fraction(Poly::monomial(kept, 1), Poly(1));
            acc += term;
        }
        return acc;
    };
    Expr n = apply(e.num());
    if (e.den().is_constant()) return n / Expr(e.den().constant_value());
    return n / apply(e.den());
}

Expr nonlocal_symbol(const Expr& density) {
    if (density.has_nonlocal()) throw PreconditionError("nonlocal densities must be free of nonlocal symbols");
    if (density.is_zero()) throw PreconditionError("nonlocal density must be nonzero");
    auto& t = nonlocal_table();
    {
        std::shared_lock lock(t.mutex);
        for (std::size_t i = 0; i < t.densities.size(); ++i)
            if (t.densities[i] == density) return Expr::var(Var::nonlocal(static_cast<std::uint32_t>(i)));
    }
    std::unique_lock lock(t.mutex);
    for (std::size_t i = 0; i < t.densities.size(); ++i)
        if (t.densities[i] == density) return Expr::var(Var::nonlocal(static_cast<std::uint32_t>(i)));
    t.densities.push_back(density);
    return Expr::var(Var::nonlocal(static_cast<std::uint32_t>(t.densities.size() - 1)));
}

Expr nonlocal_density(std::uint32_t id) {
    auto& t = nonlocal_table();
    std::shared_lock lock(t.mutex);
    if (id >= t.densities.size()) throw PreconditionError("unknown nonlocal symbol");
    return t.densities[id];
}

std::uint32_t nonlocal_id(const Expr& symbol) {
    const auto& t = symbol.num().terms();
    if (!symbol.den().is_constant() || t.size() != 1 || t[0].mono.factors.size() != 1 ||
        t[0].mono.factors[0].first.kind() != VarKind::Nonlocal)
        throw PreconditionError("not a nonlocal symbol");
    return t[0].mono.factors[0].first.index();
}

std::size_t nonlocal_count() {
    auto& t = nonlocal_table();
    std::shared_lock lock(t.mutex);
    return t.densities.size();
}

}  // namespace wnh
