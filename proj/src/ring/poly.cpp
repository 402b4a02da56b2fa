#include "wnh/ring/poly.hpp"

#include <algorithm>
#include <map>

namespace wnh {

std::uint32_t Monomial::exponent(Var v) const {
    auto it = std::lower_bound(factors.begin(), factors.end(), v,
                               [](const auto& f, Var w) { return f.first < w; });
    return (it != factors.end() && it->first == v) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
    if (degree > other.degree) return false;
    std::size_t j = 0;
    for (const auto& [v, e] : factors) {
        while (j < other.factors.size() && other.factors[j].first < v) ++j;
        if (j == other.factors.size() || other.factors[j].first != v || other.factors[j].second < e)
            return false;
    }
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            r.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            r.factors.push_back(b.factors[j++]);
        } else {
            r.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
            ++i;
            ++j;
        }
    }
    r.degree = a.degree + b.degree;
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t j = 0;
    for (const auto& [v, e] : a.factors) {
        std::uint32_t sub = 0;
        while (j < b.factors.size() && b.factors[j].first < v) ++j;
        if (j < b.factors.size() && b.factors[j].first == v) sub = b.factors[j].second;
        if (e > sub) r.factors.emplace_back(v, e - sub);
    }
    r.degree = a.degree - b.degree;
    return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t j = 0;
    for (const auto& [v, e] : a.factors) {
        while (j < b.factors.size() && b.factors[j].first < v) ++j;
        if (j < b.factors.size() && b.factors[j].first == v) {
            auto m = std::min(e, b.factors[j].second);
            r.factors.emplace_back(v, m);
            r.degree += m;
        }
    }
    return r;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    auto i = a.factors.rbegin(), j = b.factors.rbegin();
    for (; i != a.factors.rend() && j != b.factors.rend(); ++i, ++j) {
        if (i->first != j->first) return i->first < j->first;
        if (i->second != j->second) return i->second < j->second;
    }
    return i == a.factors.rend() && j != b.factors.rend();
}

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.push_back(Term{Monomial{}, c});
}

Poly Poly::variable(Var v, std::uint32_t exponent) {
    Monomial m;
    if (exponent > 0) {
        m.factors.emplace_back(v, exponent);
        m.degree = exponent;
    }
    return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::map<Monomial, Rational, GrlexGreater> acc;
    for (auto& t : terms) {
        auto [it, fresh] = acc.try_emplace(std::move(t.mono), t.coef);
        if (!fresh) it->second += t.coef;
    }
    Poly p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Poly::constant_value() const { return terms_.empty() ? Rational(0) : terms_[0].coef; }

std::uint32_t Poly::total_degree() const { return terms_.empty() ? 0 : terms_[0].mono.degree; }

bool Poly::contains(Var v) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono.contains(v); });
}

bool Poly::contains_kind(VarKind k) const {
    for (const auto& t : terms_)
        for (const auto& f : t.mono.factors)
            if (f.first.kind() == k) return true;
    return false;
}

std::uint32_t Poly::degree_in(Var v) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
    return d;
}

std::set<Var> Poly::variables() const {
    std::set<Var> s;
    for (const auto& t : terms_)
        for (const auto& f : t.mono.factors) s.insert(f.first);
    return s;
}

std::optional<Var> Poly::highest_variable() const {
    std::optional<Var> best;
    for (const auto& t : terms_)
        if (!t.mono.factors.empty() && (!best || *best < t.mono.factors.back().first))
            best = t.mono.factors.back().first;
    return best;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_less(b[j].mono, a[i].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_less(a[i].mono, b[j].mono)) {
            out.push_back(b[j++]);
            if (subtract) out.back().coef = -out.back().coef;
        } else {
            Rational c = subtract ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
            if (c != 0) out.push_back(Term{a[i].mono, c});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    if (a.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
    if (b.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);
    std::map<Monomial, Rational, GrlexGreater> acc;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            auto [it, fresh] = acc.try_emplace(s.mono * t.mono, s.coef * t.coef);
            if (!fresh) it->second += s.coef * t.coef;
        }
    Poly p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) p.terms_.push_back(Term{m, c});
    return p;
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly{};
    Poly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
    if (c == 0) return Poly{};
    Poly r;
    r.terms_.reserve(terms_.size());
    // Multiplication by a monomial preserves grlex order.
    for (const auto& t : terms_) r.terms_.push_back(Term{t.mono * m, t.coef * c});
    return r;
}

Poly Poly::derivative(Var v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        auto e = t.mono.exponent(v);
        if (e == 0) continue;
        Monomial m;
        m.degree = t.mono.degree - 1;
        for (const auto& f : t.mono.factors) {
            if (f.first == v) {
                if (f.second > 1) m.factors.emplace_back(v, f.second - 1);
            } else {
                m.factors.push_back(f);
            }
        }
        out.push_back(Term{std::move(m), t.coef * e});
    }
    return from_terms(std::move(out));
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
    std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
    for (const auto& t : terms_) {
        auto e = t.mono.exponent(v);
        Monomial m;
        m.degree = t.mono.degree - e;
        for (const auto& f : t.mono.factors)
            if (f.first != v) m.factors.push_back(f);
        buckets[e].push_back(Term{std::move(m), t.coef});
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

Poly Poly::from_coefficients(Var v, const std::vector<Poly>& coeffs) {
    std::vector<Term> all;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        Monomial vk;
        if (k > 0) {
            vk.factors.emplace_back(v, static_cast<std::uint32_t>(k));
            vk.degree = static_cast<std::uint32_t>(k);
        }
        for (const auto& t : coeffs[k].terms()) all.push_back(Term{t.mono * vk, t.coef});
    }
    return from_terms(std::move(all));
}

Poly Poly::transform(const std::function<Poly(const Monomial&, const Rational&)>& f) const {
    Poly out;
    for (const auto& t : terms_) out += f(t.mono, t.coef);
    return out;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (d.is_constant()) return scaled(Rational(1) / d.constant_value());
    Poly q, r = *this;
    const Term& lead = d.leading();
    std::vector<Term> qt;
    while (!r.is_zero()) {
        const Term& lt = r.leading();
        if (!lead.mono.divides(lt.mono)) return std::nullopt;
        Monomial m = lt.mono / lead.mono;
        Rational c = lt.coef / lead.coef;
        r -= d.times_monomial(m, c);
        qt.push_back(Term{std::move(m), std::move(c)});
    }
    return from_terms(std::move(qt));
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(Rational(1) / terms_[0].coef);
}

Monomial Poly::monomial_content() const {
    if (terms_.empty()) return Monomial{};
    Monomial g = terms_[0].mono;
    for (std::size_t i = 1; i < terms_.size() && !g.is_one(); ++i) g = monomial_gcd(g, terms_[i].mono);
    return g;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].coef != b.terms_[i].coef || !(a.terms_[i].mono == b.terms_[i].mono)) return false;
    return true;
}

}  // namespace wnh
