#include "wnh/ring/printer.hpp"

#include <sstream>

#include "wnh/ring/registry.hpp"

namespace wnh {

std::string Names::field(std::uint32_t a) const {
    if (a < fields.size()) return fields[a];
    static const char* defaults[] = {"u", "v", "w"};
    if (a < 3) return defaults[a];
    return "u" + std::to_string(a + 1);
}

const Names& Names::defaults() {
    static const Names n{};
    return n;
}

std::string var_name(Var v, const Names& names) {
    switch (v.kind()) {
        case VarKind::Constant:
            return constant_info(v.index()).name;
        case VarKind::Param:
            return param_name(v.index());
        case VarKind::X:
            return "x";
        case VarKind::Jet:
            return v.order() == 0 ? names.field(v.field())
                                  : names.field(v.field()) + "_" + std::to_string(v.order());
        case VarKind::Nonlocal:
            return "Dinv(" + to_string(nonlocal_density(v.index()), names) + ")";
    }
    return "?";
}

namespace {

std::string monomial_string(const Monomial& m, const Names& names) {
    std::vector<std::string> parts;
    auto emit = [&](Var v, std::uint32_t e) {
        std::string s = var_name(v, names);
        if (e > 1) s += "^" + std::to_string(e);
        parts.push_back(std::move(s));
    };
    for (const auto& [v, e] : m.factors)
        if (v.kind() == VarKind::Nonlocal) emit(v, e);
    for (const auto& [v, e] : m.factors)
        if (v.kind() != VarKind::Nonlocal) emit(v, e);
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
}

}  // namespace

std::string to_string(const Poly& p, const Names& names) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coef;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        if (t.mono.is_one()) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << monomial_string(t.mono, names);
        }
    }
    return os.str();
}

std::string to_string(const Expr& e, const Names& names) {
    std::string n = to_string(e.num(), names);
    if (e.den().is_constant()) return n;
    if (e.num().size() > 1) n = "(" + n + ")";
    std::string d = to_string(e.den(), names);
    if (e.den().size() > 1 || e.den().leading().mono.factors.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace wnh
