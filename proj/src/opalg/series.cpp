#include "wnh/opalg/series.hpp"

#include "wnh/error.hpp"
#include "wnh/ring/binomial.hpp"

namespace wnh {

void TruncatedSeries::add(int degree, const Matrix& m) {
    if (m.is_zero()) return;
    auto it = terms.find(degree);
    if (it == terms.end()) {
        terms.emplace(degree, m);
        return;
    }
    it->second += m;
    if (it->second.is_zero()) terms.erase(it);
}

std::optional<int> TruncatedSeries::degree() const {
    if (terms.empty()) return std::nullopt;
    return terms.rbegin()->first;
}

Matrix TruncatedSeries::coefficient(int degree) const {
    auto it = terms.find(degree);
    return it == terms.end() ? Matrix(rows, cols) : it->second;
}

TruncatedSeries expand_truncated(const Operator& a, int cutoff) {
    if (cutoff < 1) throw PreconditionError("expansion cutoff must be positive");
    TruncatedSeries s{a.rows(), a.cols(), cutoff, {}, std::nullopt, false};
    for (const auto& [d, m] : a.diff()) s.add(static_cast<int>(d), m);
    for (const auto& t : a.tails()) {
        ExprVec g = t.right;
        for (int q = 0; -1 - q >= -cutoff; ++q) {
            if (q > 0) g = total_derivative(g);
            Matrix m(a.rows(), a.cols());
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = t.left[i] * g[j];
            s.add(-1 - q, q % 2 ? -m : m);
        }
        s.truncated = true;
    }
    if (s.truncated) s.exact_from = -cutoff;
    return s;
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, int cutoff) {
    if (a.cols != b.rows) throw ShapeMismatch("series product: inner dimensions differ");
    TruncatedSeries out{a.rows, b.cols, cutoff, {}, std::nullopt, false};
    for (const auto& [i, am] : a.terms) {
        for (const auto& [j, bm] : b.terms) {
            Matrix bk = bm;
            for (long k = 0;; ++k) {
                if (i >= 0 && k > i) break;
                int deg = i - static_cast<int>(k) + j;
                if (deg < -cutoff) {
                    out.truncated = true;
                    break;
                }
                if (k > 0) bk = total_derivative(bk);
                if (bk.is_zero()) break;
                out.add(deg, Expr(binomial(i, static_cast<std::uint32_t>(k))) * (am * bk));
            }
        }
    }
    std::optional<int> low;
    auto da = a.degree(), db = b.degree();
    if (a.exact_from && db) low = *a.exact_from + *db;
    if (b.exact_from && da) low = std::max(low.value_or(*b.exact_from + *da), *b.exact_from + *da);
    if (low)
        out.exact_from = std::max(*low, -cutoff);
    else if (out.truncated)
        out.exact_from = -cutoff;
    return out;
}

TruncatedSeries invert_truncated(const Operator& a, int cutoff) {
    auto prof = series_profile(a);
    if (!prof.degree || !prof.nondegenerate) throw PreconditionError("degenerate leading coefficient");
    const int m = *prof.degree;
    Matrix ainv = inverse(prof.leading);
    TruncatedSeries ae = expand_truncated(a, cutoff + 2 * std::abs(m) + 2);
    TruncatedSeries b{a.cols(), a.rows(), cutoff, {}, -cutoff, true};
    for (int k = 0; -m - k >= -cutoff; ++k) {
        TruncatedSeries p = multiply(ae, b, k);
        Matrix r = k == 0 ? Matrix::identity(a.rows()) : Matrix(a.rows(), a.rows());
        r -= p.coefficient(-k);
        b.add(-m - k, ainv * r);
    }
    return b;
}

bool is_identity_through(const TruncatedSeries& s, int cutoff) {
    if (s.rows != s.cols) return false;
    if (s.exact_from && *s.exact_from > -cutoff) return false;
    for (const auto& [d, m] : s.terms) {
        if (d < -cutoff) continue;
        if (d == 0 ? !(m == Matrix::identity(s.rows)) : !m.is_zero()) return false;
    }
    return s.terms.count(0) == 1;
}

bool agree_through(const TruncatedSeries& a, const TruncatedSeries& b, int cutoff) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    if ((a.exact_from && *a.exact_from > -cutoff) || (b.exact_from && *b.exact_from > -cutoff)) return false;
    std::set<int> degs;
    for (const auto& [d, m] : a.terms) degs.insert(d);
    for (const auto& [d, m] : b.terms) degs.insert(d);
    for (int d : degs)
        if (d >= -cutoff && !(a.coefficient(d) == b.coefficient(d))) return false;
    return true;
}

std::string to_string(const TruncatedSeries& s, const Names& names) {
    auto d_pow = [](int j) { return j == 1 ? std::string("D") : "D^" + std::to_string(j); };
    auto term = [&](const Expr& c, int j) {
        if (j == 0) return to_string(c, names);
        if (c == Expr(1)) return d_pow(j);
        if (c == Expr(-1)) return "-" + d_pow(j);
        std::string t = to_string(c, names);
        if (c.den().is_constant() && c.num().size() > 1) t = "(" + t + ")";
        return t + "*" + d_pow(j);
    };
    auto join = [](const std::vector<std::string>& parts) {
        std::string out;
        for (const auto& p : parts) {
            if (out.empty())
                out = p;
            else if (p[0] == '-')
                out += " - " + p.substr(1);
            else
                out += " + " + p;
        }
        return out.empty() ? std::string("0") : out;
    };
    auto entry = [&](std::size_t i, std::size_t j) {
        std::vector<std::string> parts;
        for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it)
            if (!it->second(i, j).is_zero()) parts.push_back(term(it->second(i, j), it->first));
        return join(parts);
    };
    std::string body;
    if (s.rows == 1 && s.cols == 1) {
        body = entry(0, 0);
    } else {
        body = "[";
        for (std::size_t i = 0; i < s.rows; ++i) {
            body += i ? ", [" : "[";
            for (std::size_t j = 0; j < s.cols; ++j) body += (j ? ", " : "") + entry(i, j);
            body += "]";
        }
        body += "]";
    }
    if (s.truncated) body += " + O(D^" + std::to_string(-s.cutoff - 1) + ")";
    return body;
}

}  // namespace wnh
