#include <algorithm>

#include "wnh/ring/poly.hpp"

// Multivariate gcd over Q by recursion on the highest variable: contents
// are handled recursively and primitive parts by a primitive
// pseudo-remainder sequence.

namespace wnh {
Poly gcd(const Poly& a, const Poly& b);

namespace {

using Dense = std::vector<Poly>;  // coefficients in the main variable

void trim(Dense& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Poly content(const Dense& a) {
    Poly g;
    for (const auto& c : a) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.monic() : gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Dense divide_all(const Dense& a, const Poly& c) {
    Dense out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(*x.divide_exact(c));
    return out;
}

Dense primitive(const Dense& a) {
    Poly c = content(a);
    if (c.is_zero()) return a;
    Dense p = divide_all(a, c);
    // Fix the overall rational scale so the sequence stays small.
    return divide_all(p, Poly(p.back().leading().coef));
}

Dense pseudo_remainder(Dense a, const Dense& b) {
    const std::size_t db = b.size() - 1;
    const Poly& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        Poly la = a.back();
        std::size_t shift = a.size() - 1 - db;
        for (auto& x : a) x = x * lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

// gcd(g, c_0, c_1, ...); g stays small when it lacks the main variable.
Poly gcd_with_coefficients(Poly g, const Dense& cs) {
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g.monic();
}

Poly monomial_case(const Poly& mono, const Poly& other) {
    Monomial g = monomial_gcd(mono.leading().mono, other.monomial_content());
    return Poly::monomial(g, 1);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a.size() == 1) return monomial_case(a, b);
    if (b.size() == 1) return monomial_case(b, a);

    Var va = *a.highest_variable(), vb = *b.highest_variable();
    Var v = std::max(va, vb);
    const bool in_a = a.contains(v), in_b = b.contains(v);
    if (!in_a) return gcd_with_coefficients(a, b.coefficients_in(v));
    if (!in_b) return gcd_with_coefficients(b, a.coefficients_in(v));

    Dense ca = a.coefficients_in(v), cb = b.coefficients_in(v);
    Poly conta = content(ca), contb = content(cb);
    Poly c = gcd(conta, contb);
    Dense pa = primitive(divide_all(ca, conta));
    Dense pb = primitive(divide_all(cb, contb));
    if (pa.size() < pb.size()) std::swap(pa, pb);
    while (true) {
        Dense r = pseudo_remainder(pa, pb);
        if (r.empty()) break;
        if (r.size() == 1) {
            pb = Dense{Poly(1)};
            break;
        }
        pa = std::move(pb);
        pb = primitive(r);
    }
    return (c * Poly::from_coefficients(v, pb)).monic();
}

}  // namespace wnh
