#include "wnh/opalg/operator.hpp"

namespace wnh {
namespace {

std::string d_power(std::uint32_t m) { return m == 1 ? "D" : "D^" + std::to_string(m); }

std::string term(const Expr& c, std::uint32_t m, const Names& names) {
    if (m == 0) return to_string(c, names);
    if (c == Expr(1)) return d_power(m);
    if (c == Expr(-1)) return "-" + d_power(m);
    std::string s = to_string(c, names);
    if (c.den().is_constant() && c.num().size() > 1) s = "(" + s + ")";
    return s + "*" + d_power(m);
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (out.empty()) {
            out = p;
        } else if (!p.empty() && p[0] == '-') {
            out += " - " + p.substr(1);
        } else {
            out += " + " + p;
        }
    }
    return out.empty() ? "0" : out;
}

std::string list(const ExprVec& v, const Names& names) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i], names);
    }
    return s + ")";
}

std::string entry(const Operator& a, std::size_t i, std::size_t j, const Names& names) {
    std::vector<std::string> parts;
    for (auto it = a.diff().rbegin(); it != a.diff().rend(); ++it) {
        const Expr& c = it->second(i, j);
        if (!c.is_zero()) parts.push_back(term(c, it->first, names));
    }
    return join(parts);
}

}  // namespace

std::string to_string(const ExprVec& v, const Names& names) { return list(v, names); }

std::string to_string(const Operator& op, const Names& names) {
    Operator a = op.normalized();
    std::vector<std::string> parts;
    if (a.rows() == 1 && a.cols() == 1) {
        std::string d = entry(a, 0, 0, names);
        if (d != "0") parts.push_back(d);
    } else if (!a.diff().empty() || a.tails().empty()) {
        std::string m = "[";
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i) m += ", ";
            m += "[";
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (j) m += ", ";
                m += entry(a, i, j, names);
            }
            m += "]";
        }
        parts.push_back(m + "]");
    }
    for (const auto& t : a.tails()) parts.push_back("tail(" + list(t.left, names) + "; " + list(t.right, names) + ")");
    return join(parts);
}

}  // namespace wnh
