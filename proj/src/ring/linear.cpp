#include "wnh/ring/linear.hpp"

#include <map>
#include <set>

#include "wnh/ring/registry.hpp"

namespace wnh {

bool is_zero(const ExprVec& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        Rational inv = Rational(1) / a[r][c];
        for (auto& x : a[r]) x *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

namespace {

using Key = std::pair<std::size_t, Monomial>;

struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
        if (a.first != b.first) return a.first < b.first;
        return grlex_less(a.second, b.second);
    }
};

}  // namespace

std::optional<ExprVec> constant_combination(const std::vector<ExprVec>& basis, const ExprVec& target) {
    if (basis.empty()) {
        if (is_zero(target)) return ExprVec{};
        return std::nullopt;
    }
    // Common denominator and the constants in play.
    std::vector<Poly> dens;
    std::set<Var> constants;
    auto scan = [&](const ExprVec& v) {
        for (const auto& e : v) {
            if (!e.den().is_constant() &&
                std::find(dens.begin(), dens.end(), e.den()) == dens.end())
                dens.push_back(e.den());
            for (Var x : e.num().variables())
                if (x.kind() == VarKind::Constant) constants.insert(x);
        }
    };
    for (const auto& b : basis) scan(b);
    scan(target);
    Expr common(1);
    for (const auto& d : dens) common *= Expr::fraction(d, Poly(1));

    std::vector<Var> cs(constants.begin(), constants.end());
    std::vector<Expr> subset_monomials;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cs.size()); ++mask) {
        Expr m(1);
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (mask >> i & 1) m *= Expr::var(cs[i]);
        subset_monomials.push_back(m);
    }

    std::map<Key, std::size_t, KeyLess> row_of;
    std::vector<std::map<std::size_t, Rational>> columns;
    auto flatten = [&](const ExprVec& v, const Expr& scale) {
        std::map<std::size_t, Rational> col;
        for (std::size_t comp = 0; comp < v.size(); ++comp) {
            Expr e = v[comp] * common * scale;
            for (const auto& t : e.num().terms()) {
                Key k{comp, t.mono};
                auto it = row_of.find(k);
                if (it == row_of.end()) it = row_of.emplace(k, row_of.size()).first;
                col[it->second] += t.coef / e.den().constant_value();
            }
        }
        return col;
    };
    for (const auto& b : basis) {
        if (b.size() != target.size()) return std::nullopt;
        for (const auto& sm : subset_monomials) columns.push_back(flatten(b, sm));
    }
    auto rhs = flatten(target, Expr(1));

    std::vector<std::vector<Rational>> a(row_of.size(), std::vector<Rational>(columns.size(), Rational(0)));
    std::vector<Rational> bvec(row_of.size(), Rational(0));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) a[r][c] = v;
    for (const auto& [r, v] : rhs) bvec[r] = v;
    auto sol = solve_rational(std::move(a), std::move(bvec));
    if (!sol) return std::nullopt;
    ExprVec out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Expr c;
        for (std::size_t s = 0; s < subset_monomials.size(); ++s) {
            const Rational& q = (*sol)[i * subset_monomials.size() + s];
            if (q != 0) c += Expr(q) * subset_monomials[s];
        }
        out.push_back(c);
    }
    return out;
}

std::vector<std::size_t> independent_subset(const std::vector<ExprVec>& vectors) {
    std::vector<std::size_t> kept;
    std::vector<ExprVec> basis;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (is_zero(vectors[i])) continue;
        if (!basis.empty() && constant_combination(basis, vectors[i])) continue;
        kept.push_back(i);
        basis.push_back(vectors[i]);
    }
    return kept;
}

}  // namespace wnh
