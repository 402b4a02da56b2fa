#include "wnh/opalg/operator.hpp"

#include "wnh/error.hpp"
#include "wnh/ring/binomial.hpp"

namespace wnh {

Space domain(Variance v) { return v == Variance::VtoV || v == Variance::VtoVs ? Space::V : Space::Vs; }
Space codomain(Variance v) { return v == Variance::VtoV || v == Variance::VstoV ? Space::V : Space::Vs; }

Variance make_variance(Space from, Space to) {
    if (from == Space::V) return to == Space::V ? Variance::VtoV : Variance::VtoVs;
    return to == Space::V ? Variance::VstoV : Variance::VstoVs;
}

std::string to_string(Variance v) {
    switch (v) {
        case Variance::VtoV: return "V->V";
        case Variance::VtoVs: return "V->Vs";
        case Variance::VstoV: return "Vs->V";
        case Variance::VstoVs: return "Vs->Vs";
    }
    return "?";
}

std::optional<Variance> parse_variance(const std::string& s) {
    for (auto v : {Variance::VtoV, Variance::VtoVs, Variance::VstoV, Variance::VstoVs})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

namespace {

Space dual(Space s) { return s == Space::V ? Space::Vs : Space::V; }

Matrix outer(const ExprVec& col, const ExprVec& row) {
    Matrix m(col.size(), row.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i].is_zero()) continue;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) m(i, j) = col[i] * row[j];
    }
    return m;
}

ExprVec scaled(const Expr& c, const ExprVec& v) {
    ExprVec out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(c * e);
    return out;
}

ExprVec row_times(const ExprVec& row, const Matrix& m) {
    ExprVec out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero() && !m(k, j).is_zero()) out[j] += row[k] * m(k, j);
    return out;
}

ExprVec times_column(const Matrix& m, const ExprVec& col) {
    ExprVec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < col.size(); ++k)
            if (!m(i, k).is_zero() && !col[k].is_zero()) out[i] += m(i, k) * col[k];
    return out;
}

void check_variance(bool ok, const char* what) {
    if (!ok) throw ShapeMismatch(what);
}

}  // namespace

Operator::Operator(std::size_t rows, std::size_t cols, Variance variance)
    : rows_(rows), cols_(cols), variance_(variance) {}

Operator Operator::identity(std::size_t n, Variance variance) {
    Operator op(n, n, variance);
    op.add_diff(0, Matrix::identity(n));
    return op;
}

Operator Operator::multiplication(const Matrix& m, Variance variance) {
    Operator op(m.rows(), m.cols(), variance);
    op.add_diff(0, m);
    return op;
}

Operator Operator::scalar(const Expr& e, std::size_t n, Variance variance) {
    return multiplication(e * Matrix::identity(n), variance);
}

Operator Operator::d_power(std::size_t n, std::uint32_t k, Variance variance) {
    Operator op(n, n, variance);
    op.add_diff(k, Matrix::identity(n));
    return op;
}

Operator Operator::tail(const ExprVec& left, const ExprVec& right, Variance variance) {
    Operator op(left.size(), right.size(), variance);
    op.add_tail({left, right});
    return op;
}

Operator Operator::with_variance(Variance v) const {
    Operator op = *this;
    op.variance_ = v;
    return op;
}

void Operator::add_diff(std::uint32_t degree, const Matrix& m) {
    if (m.rows() != rows_ || m.cols() != cols_) throw ShapeMismatch("operator coefficient has the wrong shape");
    if (m.is_zero()) return;
    auto it = diff_.find(degree);
    if (it == diff_.end()) {
        diff_.emplace(degree, m);
        return;
    }
    it->second += m;
    if (it->second.is_zero()) diff_.erase(it);
}

void Operator::add_tail(Tail t) {
    if (t.left.size() != rows_ || t.right.size() != cols_) throw ShapeMismatch("tail has the wrong shape");
    if (wnh::is_zero(t.left) || wnh::is_zero(t.right)) return;
    tails_.push_back(std::move(t));
}

bool Operator::has_nonlocal() const {
    for (const auto& [d, m] : diff_)
        if (m.has_nonlocal()) return true;
    for (const auto& t : tails_)
        for (const auto* v : {&t.left, &t.right})
            for (const auto& e : *v)
                if (e.has_nonlocal()) return true;
    return false;
}

std::uint32_t Operator::nonlocal_degree() const {
    std::uint32_t d = 0;
    for (const auto& [k, m] : diff_)
        for (const auto& e : m.data()) d = std::max(d, e.nonlocal_degree());
    for (const auto& t : tails_)
        for (const auto* v : {&t.left, &t.right})
            for (const auto& e : *v) d = std::max(d, e.nonlocal_degree());
    return d;
}

Operator Operator::normalized() const {
    Operator out(rows_, cols_, variance_);
    for (const auto& [d, m] : diff_) out.add_diff(d, m);
    std::vector<Tail> live;
    for (const auto& t : tails_)
        if (!wnh::is_zero(t.left) && !wnh::is_zero(t.right)) live.push_back(t);
    if (live.empty()) return out;

    std::vector<ExprVec> rights;
    for (const auto& t : live) rights.push_back(t.right);
    auto basis_idx = independent_subset(rights);
    std::vector<ExprVec> basis;
    std::vector<ExprVec> lefts;
    for (auto i : basis_idx) {
        basis.push_back(rights[i]);
        lefts.push_back(ExprVec(rows_));
    }
    for (const auto& t : live) {
        auto c = constant_combination(basis, t.right);
        if (!c) throw Error("tail normalization: right factor outside its own span");
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!(*c)[k].is_zero())
                for (std::size_t i = 0; i < rows_; ++i) lefts[k][i] += (*c)[k] * t.left[i];
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (wnh::is_zero(lefts[k])) continue;
        // Fix the rational scale: first nonzero right entry gets a monic numerator.
        Rational lc(1);
        for (const auto& e : basis[k])
            if (!e.is_zero()) {
                lc = e.num().leading().coef;
                break;
            }
        Expr s(lc);
        out.tails_.push_back({scaled(s, lefts[k]), scaled(Expr(1) / s, basis[k])});
    }
    return out;
}

bool Operator::is_zero() const {
    Operator n = normalized();
    return n.diff_.empty() && n.tails_.empty();
}

Operator Operator::operator-() const {
    Operator out(rows_, cols_, variance_);
    for (const auto& [d, m] : diff_) out.diff_.emplace(d, -m);
    for (const auto& t : tails_) out.tails_.push_back({scaled(Expr(-1), t.left), t.right});
    return out;
}

Operator& Operator::operator+=(const Operator& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("operator sum: shape mismatch");
    check_variance(variance_ == o.variance_, "operator sum: variance mismatch");
    for (const auto& [d, m] : o.diff_) add_diff(d, m);
    for (const auto& t : o.tails_) tails_.push_back(t);
    return *this;
}

Operator& Operator::operator-=(const Operator& o) { return *this += -o; }

Operator operator*(const Expr& c, const Operator& a) {
    if (c.is_zero()) return Operator(a.rows_, a.cols_, a.variance_);
    Operator out(a.rows_, a.cols_, a.variance_);
    for (const auto& [d, m] : a.diff_) out.add_diff(d, c * m);
    for (const auto& t : a.tails_) out.tails_.push_back({scaled(c, t.left), t.right});
    return out;
}

Operator Operator::entry(std::size_t i, std::size_t j) const {
    Operator out(1, 1, variance_);
    for (const auto& [d, m] : diff_) {
        Matrix e(1, 1);
        e(0, 0) = m(i, j);
        out.add_diff(d, e);
    }
    for (const auto& t : tails_) out.add_tail({{t.left[i]}, {t.right[j]}});
    return out;
}

Operator Operator::transform_coefficients(const std::function<Expr(const Expr&)>& f) const {
    Operator out(rows_, cols_, variance_);
    for (const auto& [d, m] : diff_) out.add_diff(d, m.map(f));
    for (const auto& t : tails_) {
        Tail nt;
        for (const auto& e : t.left) nt.left.push_back(f(e));
        for (const auto& e : t.right) nt.right.push_back(f(e));
        out.add_tail(std::move(nt));
    }
    return out;
}

Operator compose(const Operator& a, const Operator& b) {
    check_variance(domain(a.variance()) == codomain(b.variance()), "composition: variances do not compose");
    return compose_as(a, b, make_variance(domain(b.variance()), codomain(a.variance())));
}

Operator compose_as(const Operator& a, const Operator& b, Variance result) {
    if (a.cols() != b.rows()) throw ShapeMismatch("composition: inner dimensions differ");
    Operator out(a.rows(), b.cols(), result);

    for (const auto& [m, am] : a.diff()) {
        for (const auto& [k, bk] : b.diff()) {
            Matrix d = bk;
            for (std::uint32_t i = 0; i <= m; ++i) {
                if (i > 0) d = total_derivative(d);
                if (d.is_zero()) break;
                out.add_diff(m - i + k, Expr(binomial(m, i)) * (am * d));
            }
        }
        for (const auto& t : b.tails()) {
            ExprVec h = t.left;
            for (std::uint32_t i = 0; i <= m; ++i) {
                if (i > 0) h = total_derivative(h);
                if (is_zero(h)) break;
                ExprVec col = scaled(Expr(binomial(m, i)), times_column(am, h));
                if (i == m) {
                    out.add_tail({col, t.right});
                    continue;
                }
                std::uint32_t p = m - i - 1;
                ExprVec kr = t.right;
                for (std::uint32_t s = 0; s <= p; ++s) {
                    if (s > 0) kr = total_derivative(kr);
                    if (is_zero(kr)) break;
                    out.add_diff(p - s, Expr(binomial(p, s)) * outer(col, kr));
                }
            }
        }
    }
    for (const auto& t : a.tails()) {
        for (const auto& [k, bk] : b.diff()) {
            ExprVec h = row_times(t.right, bk);
            for (std::uint32_t q = 0; q <= k; ++q) {
                if (q > 0) h = total_derivative(h);
                if (is_zero(h)) break;
                Expr sign(q % 2 ? -1 : 1);
                if (q == k)
                    out.add_tail({t.left, scaled(sign, h)});
                else
                    out.add_diff(k - 1 - q, sign * outer(t.left, h));
            }
        }
        for (const auto& tb : b.tails()) {
            Expr middle = dot(t.right, tb.left);
            if (middle.is_zero()) continue;
            auto s = try_integrate(middle);
            if (!s) throw NotWeaklyNonlocalClosure(to_string(middle));
            out.add_tail({scaled(*s, t.left), tb.right});
            out.add_tail({t.left, scaled(-*s, tb.right)});
        }
    }
    return out.normalized();
}

Operator adjoint(const Operator& a) {
    Variance v = make_variance(dual(codomain(a.variance())), dual(domain(a.variance())));
    Operator out(a.cols(), a.rows(), v);
    for (const auto& [j, hj] : a.diff()) {
        Matrix t = hj.transpose();
        Expr sign(j % 2 ? -1 : 1);
        for (std::uint32_t q = 0; q <= j; ++q) {
            if (q > 0) t = total_derivative(t);
            if (t.is_zero()) break;
            out.add_diff(j - q, sign * Expr(binomial(j, q)) * t);
        }
    }
    for (const auto& t : a.tails()) out.add_tail({scaled(Expr(-1), t.right), t.left});
    return out.normalized();
}

bool same_action(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return (a - b.with_variance(a.variance())).is_zero();
}

bool equals(const Operator& a, const Operator& b) { return a.variance() == b.variance() && same_action(a, b); }

Operator linear_combine(const Expr& c1, const Operator& a, const Expr& c2, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("linear combination: shape mismatch");
    check_variance(a.variance() == b.variance(), "linear combination: variance mismatch");
    return (c1 * a + c2 * b).normalized();
}

ApplyResult apply(const Operator& a, const ExprVec& v, NonlocalPolicy policy) {
    if (v.size() != a.cols()) throw ShapeMismatch("operator applied to a vector of the wrong length");
    ApplyResult r{ExprVec(a.rows()), {}};
    ExprVec dv = v;
    std::uint32_t at = 0;
    for (const auto& [m, am] : a.diff()) {
        while (at < m) {
            dv = total_derivative(dv);
            ++at;
        }
        auto part = times_column(am, dv);
        for (std::size_t i = 0; i < r.value.size(); ++i) r.value[i] += part[i];
    }
    for (const auto& t : a.tails()) {
        Expr density = dot(t.right, v);
        if (density.is_zero()) continue;
        auto in = integrate(density, policy);
        r.created.insert(r.created.end(), in.created.begin(), in.created.end());
        for (std::size_t i = 0; i < r.value.size(); ++i) r.value[i] += in.value * t.left[i];
    }
    return r;
}

SeriesProfile series_profile(const Operator& a) {
    Operator n = a.normalized();
    SeriesProfile p;
    if (!n.diff().empty()) {
        auto it = n.diff().rbegin();
        p.degree = static_cast<int>(it->first);
        p.leading = it->second;
    } else if (!n.tails().empty()) {
        // Coefficient of D^{-1-q} is (-1)^q sum f (D^q g)^T; the first nonzero one leads.
        std::vector<ExprVec> rights;
        for (const auto& t : n.tails()) rights.push_back(t.right);
        for (int q = 0; q <= static_cast<int>(n.tails().size()) + 1; ++q) {
            Matrix lead(n.rows(), n.cols());
            for (std::size_t k = 0; k < rights.size(); ++k) lead += outer(n.tails()[k].left, rights[k]);
            if (!lead.is_zero()) {
                p.degree = -1 - q;
                p.leading = q % 2 ? -lead : lead;
                break;
            }
            for (auto& r : rights) r = total_derivative(r);
        }
    }
    if (p.degree && n.rows() == n.cols()) p.nondegenerate = !determinant(p.leading).is_zero();
    if (n.rows() == n.cols()) p.skew = same_action(adjoint(n), -n);
    return p;
}

Operator from_entries(const std::vector<std::vector<Operator>>& entries, Variance variance) {
    const std::size_t r = entries.size();
    const std::size_t c = r ? entries[0].size() : 0;
    Operator out(r, c, variance);
    for (std::size_t i = 0; i < r; ++i) {
        if (entries[i].size() != c) throw ShapeMismatch("ragged operator matrix");
        for (std::size_t j = 0; j < c; ++j) {
            const Operator& e = entries[i][j];
            if (e.rows() != 1 || e.cols() != 1) throw ShapeMismatch("operator matrix entries must be scalar");
            for (const auto& [d, m] : e.diff()) {
                Matrix big(r, c);
                big(i, j) = m(0, 0);
                out.add_diff(d, big);
            }
            for (const auto& t : e.tails()) {
                ExprVec left(r), right(c);
                left[i] = t.left[0];
                right[j] = t.right[0];
                out.add_tail({left, right});
            }
        }
    }
    return out.normalized();
}

}  // namespace wnh
