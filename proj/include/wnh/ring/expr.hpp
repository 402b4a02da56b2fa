#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "wnh/ring/poly.hpp"
#include "wnh/ring/var.hpp"

namespace wnh {

// An element of the coefficient universe: a rational function over Q,
// extended by declared square-root constants, in x, jet variables and
// nonlocal symbols. Values are immutable and canonical:
//   * numerator reduced modulo c^2 = square for each constant,
//   * denominator free of constants and nonlocal symbols,
//   * gcd(numerator, denominator) = 1 and the denominator is monic.
// Two Exprs are equal iff their canonical forms coincide.
class Expr {
public:
    Expr();
    Expr(int n);  // NOLINT(google-explicit-constructor)
    Expr(long n);  // NOLINT(google-explicit-constructor)
    Expr(const Rational& q);  // NOLINT(google-explicit-constructor)

    static Expr var(Var v);
    static Expr x() { return var(Var::x()); }
    static Expr jet(std::uint32_t field, std::uint32_t order = 0) { return var(Var::jet(field, order)); }
    static Expr param(std::uint32_t i) { return var(Var::param(i)); }
    static Expr constant(std::uint32_t i) { return var(Var::constant(i)); }
    static Expr fraction(const Poly& num, const Poly& den);

    const Poly& num() const { return rep_->num; }
    const Poly& den() const { return rep_->den; }

    bool is_zero() const { return num().is_zero(); }
    bool is_polynomial() const { return den().is_constant(); }
    // Rational number (no variables at all).
    bool is_rational() const { return num().is_constant() && den().is_constant(); }
    Rational rational_value() const;
    // Free of x, jets, nonlocal symbols and parameters; constants allowed.
    bool is_constant() const;
    bool has_kind(VarKind k) const { return num().contains_kind(k) || den().contains_kind(k); }
    bool has_nonlocal() const { return num().contains_kind(VarKind::Nonlocal); }
    // Maximal total degree in nonlocal symbols.
    std::uint32_t nonlocal_degree() const;
    std::set<Var> variables() const;
    // Highest jet order of field `field` present, or -1.
    int max_order(std::uint32_t field) const;
    int max_order() const;

    Expr operator-() const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    Expr pow(std::uint32_t k) const;

    // Formal partial derivative in a single variable.
    Expr partial(Var v) const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Rep {
        Poly num;
        Poly den;
    };
    explicit Expr(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
    static Expr raw(Poly num, Poly den);
    std::shared_ptr<const Rep> rep_;
};

// Total x-derivative D = d/dx + sum u_{j+1} d/du_j + sum K_b d/d(omega_b).
Expr total_derivative(const Expr& e);
Expr total_derivative(const Expr& e, std::uint32_t times);

// Replaces every variable v by image(v) (returning nullopt keeps v).
Expr substitute(const Expr& e, const std::function<std::optional<Expr>(Var)>& image);

// Nonlocal symbols: omega with D(omega) = density. Interned by exact
// density; the table is process-wide, append-only and thread-safe.
Expr nonlocal_symbol(const Expr& density);
Expr nonlocal_density(std::uint32_t id);
// Id of a bare symbol returned by nonlocal_symbol.
std::uint32_t nonlocal_id(const Expr& symbol);
std::size_t nonlocal_count();

}  // namespace wnh
