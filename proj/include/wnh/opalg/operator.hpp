#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wnh/ring/matrix.hpp"
#include "wnh/ring/printer.hpp"
#include "wnh/varcalc/calculus.hpp"

namespace wnh {

enum class Space { V, Vs };
enum class Variance { VtoV, VtoVs, VstoV, VstoVs };

Space domain(Variance v);
Space codomain(Variance v);
Variance make_variance(Space from, Space to);
std::string to_string(Variance v);
std::optional<Variance> parse_variance(const std::string& s);

// left (column) o D^{-1} o right (row).
struct Tail {
    ExprVec left;
    ExprVec right;
};

// Matrix operator: finite differential part plus finitely many tails.
// Coefficients may carry nonlocal symbols.
class Operator {
public:
    Operator() = default;
    Operator(std::size_t rows, std::size_t cols, Variance variance = Variance::VstoV);

    static Operator identity(std::size_t n, Variance variance);
    static Operator multiplication(const Matrix& m, Variance variance);
    static Operator scalar(const Expr& e, std::size_t n, Variance variance);
    // diag(D^k)
    static Operator d_power(std::size_t n, std::uint32_t k, Variance variance);
    static Operator tail(const ExprVec& left, const ExprVec& right, Variance variance);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Variance variance() const { return variance_; }
    Operator with_variance(Variance v) const;
    const std::map<std::uint32_t, Matrix>& diff() const { return diff_; }
    const std::vector<Tail>& tails() const { return tails_; }

    void add_diff(std::uint32_t degree, const Matrix& m);
    void add_tail(Tail t);

    bool is_differential() const { return tails_.empty(); }
    bool has_nonlocal() const;
    std::uint32_t nonlocal_degree() const;
    // Merges tails on a constant basis of their right factors and drops
    // zero terms. Zero operators have no diff entries and no tails.
    Operator normalized() const;
    bool is_zero() const;

    Operator operator-() const;
    Operator& operator+=(const Operator& o);
    Operator& operator-=(const Operator& o);
    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(const Expr& c, const Operator& a);

    // Entry (i, j) as a 1x1 operator.
    Operator entry(std::size_t i, std::size_t j) const;
    Operator transform_coefficients(const std::function<Expr(const Expr&)>& f) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Variance variance_ = Variance::VstoV;
    std::map<std::uint32_t, Matrix> diff_;
    std::vector<Tail> tails_;
};

// A o B: apply B, then A.
Operator compose(const Operator& a, const Operator& b);
// Composition ignoring variance tags; the result carries `result`.
Operator compose_as(const Operator& a, const Operator& b, Variance result);
Operator adjoint(const Operator& a);
bool equals(const Operator& a, const Operator& b);
// Same as equals but ignores variance tags.
bool same_action(const Operator& a, const Operator& b);
Operator linear_combine(const Expr& c1, const Operator& a, const Expr& c2, const Operator& b);

struct ApplyResult {
    ExprVec value;
    std::vector<std::uint32_t> created;
};
ApplyResult apply(const Operator& a, const ExprVec& v, NonlocalPolicy policy = NonlocalPolicy::Strict);

struct SeriesProfile {
    std::optional<int> degree;  // nullopt for the zero operator
    Matrix leading;
    bool nondegenerate = false;
    bool skew = false;
};
SeriesProfile series_profile(const Operator& a);

// Assembles a block operator from 1x1 entries.
Operator from_entries(const std::vector<std::vector<Operator>>& entries, Variance variance);

std::string to_string(const Operator& a, const Names& names = Names::defaults());
std::string to_string(const ExprVec& v, const Names& names = Names::defaults());

}  // namespace wnh
