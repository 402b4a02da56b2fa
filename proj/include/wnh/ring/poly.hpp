#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "wnh/ring/var.hpp"

namespace wnh {

using Rational = mpq_class;

struct Monomial {
    // Sorted by ascending Var, exponents strictly positive.
    std::vector<std::pair<Var, std::uint32_t>> factors;
    std::uint32_t degree = 0;

    std::uint32_t exponent(Var v) const;
    bool contains(Var v) const { return exponent(v) != 0; }
    bool is_one() const { return factors.empty(); }
    bool divides(const Monomial& other) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
};

Monomial operator*(const Monomial& a, const Monomial& b);
// Requires b.divides(a).
Monomial operator/(const Monomial& a, const Monomial& b);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

// Graded lexicographic: total degree first, then the exponent of the
// highest variable.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

struct Term {
    Monomial mono;
    Rational coef;
};

// Sparse polynomial over Q in free commuting variables. Terms are kept in
// descending grlex order with nonzero coefficients. No reduction rules are
// applied here; quotient relations live in Expr.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c);
    static Poly variable(Var v, std::uint32_t exponent = 1);
    static Poly monomial(const Monomial& m, const Rational& c);
    static Poly from_terms(std::vector<Term> terms);  // any order, duplicates merged

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    const Term& leading() const { return terms_.front(); }
    std::uint32_t total_degree() const;

    bool contains(Var v) const;
    bool contains_kind(VarKind k) const;
    std::uint32_t degree_in(Var v) const;
    std::set<Var> variables() const;
    std::optional<Var> highest_variable() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    Poly times_monomial(const Monomial& m, const Rational& c) const;

    Poly derivative(Var v) const;
    // Coefficients as a polynomial in v: result[k] is the coefficient of v^k.
    std::vector<Poly> coefficients_in(Var v) const;
    static Poly from_coefficients(Var v, const std::vector<Poly>& coeffs);

    // Rewrite each term with f(monomial, coefficient) -> polynomial.
    Poly transform(const std::function<Poly(const Monomial&, const Rational&)>& f) const;

    std::optional<Poly> divide_exact(const Poly& d) const;
    // Scale so that the leading coefficient is 1.
    Poly monic() const;
    // Gcd of all exponent vectors.
    Monomial monomial_content() const;

    friend bool operator==(const Poly& a, const Poly& b);

private:
    std::vector<Term> terms_;
};

// Greatest common divisor in Q[vars], monic. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace wnh
