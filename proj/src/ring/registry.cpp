#include "wnh/ring/registry.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

#include "wnh/error.hpp"

namespace wnh {
namespace {

struct ConstantTable {
    std::shared_mutex mutex;
    std::deque<ConstantInfo> entries;
};

ConstantTable& table() {
    static ConstantTable t;
    return t;
}

bool is_rational_square(const Rational& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

}  // namespace

std::uint32_t declare_constant(const std::string& name, const Rational& square) {
    auto& t = table();
    std::unique_lock lock(t.mutex);
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        if (t.entries[i].name != name) continue;
        if (t.entries[i].square != square)
            throw PreconditionError("constant '" + name + "' already declared with square " +
                                    t.entries[i].square.get_str());
        return static_cast<std::uint32_t>(i);
    }
    if (square == 0 || is_rational_square(square))
        throw PreconditionError("constant '" + name + "': " + square.get_str() +
                                " is a rational square; declare the rational value instead");
    t.entries.push_back(ConstantInfo{name, square});
    return static_cast<std::uint32_t>(t.entries.size() - 1);
}

std::optional<std::uint32_t> find_constant(const std::string& name) {
    auto& t = table();
    std::shared_lock lock(t.mutex);
    for (std::size_t i = 0; i < t.entries.size(); ++i)
        if (t.entries[i].name == name) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

ConstantInfo constant_info(std::uint32_t id) {
    auto& t = table();
    std::shared_lock lock(t.mutex);
    if (id >= t.entries.size()) throw PreconditionError("unknown constant id");
    return t.entries[id];
}

std::size_t constant_count() {
    auto& t = table();
    std::shared_lock lock(t.mutex);
    return t.entries.size();
}

std::string param_name(std::uint32_t index) {
    static const char* names[] = {"lambda", "mu", "nu"};
    if (index < 3) return names[index];
    return "t" + std::to_string(index);
}

Poly reduce_constants(const Poly& p) {
    bool needed = false;
    for (const auto& t : p.terms()) {
        for (const auto& [v, e] : t.mono.factors) {
            if (v.kind() != VarKind::Constant) break;
            if (e >= 2) needed = true;
        }
        if (needed) break;
    }
    if (!needed) return p;
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        Term r{Monomial{}, t.coef};
        for (const auto& [v, e] : t.mono.factors) {
            if (v.kind() == VarKind::Constant && e >= 2) {
                Rational sq = constant_info(v.index()).square;
                for (std::uint32_t k = 0; k < e / 2; ++k) r.coef *= sq;
                if (e % 2) {
                    r.mono.factors.emplace_back(v, 1);
                    r.mono.degree += 1;
                }
            } else {
                r.mono.factors.emplace_back(v, e);
                r.mono.degree += e;
            }
        }
        out.push_back(std::move(r));
    }
    return Poly::from_terms(std::move(out));
}

}  // namespace wnh
