#pragma once

#include <compare>
#include <cstdint>

namespace wnh {

enum class VarKind : std::uint8_t {
    Constant = 0,  // declared algebraic constant, e.g. sqrt(2)
    Param = 1,     // formal homotopy parameter (lambda, mu, ...)
    X = 2,         // independent variable
    Jet = 3,       // u^a_j
    Nonlocal = 4,  // omega with D(omega) = K
};

// Encoded so that the numeric order is constants < params < x < jets (by
// field, then order) < nonlocal symbols.
struct Var {
    std::uint32_t code = 0;

    static constexpr Var constant(std::uint32_t i) { return Var{make(VarKind::Constant, i)}; }
    static constexpr Var param(std::uint32_t i) { return Var{make(VarKind::Param, i)}; }
    static constexpr Var x() { return Var{make(VarKind::X, 0)}; }
    static constexpr Var jet(std::uint32_t field, std::uint32_t order) {
        return Var{make(VarKind::Jet, (field << 16) | order)};
    }
    static constexpr Var nonlocal(std::uint32_t i) { return Var{make(VarKind::Nonlocal, i)}; }

    constexpr VarKind kind() const { return static_cast<VarKind>(code >> 28); }
    constexpr std::uint32_t payload() const { return code & 0x0FFFFFFFu; }
    constexpr std::uint32_t field() const { return payload() >> 16; }
    constexpr std::uint32_t order() const { return payload() & 0xFFFFu; }
    constexpr std::uint32_t index() const { return payload(); }

    constexpr auto operator<=>(const Var&) const = default;

private:
    static constexpr std::uint32_t make(VarKind k, std::uint32_t p) {
        return (static_cast<std::uint32_t>(k) << 28) | (p & 0x0FFFFFFFu);
    }
};

}  // namespace wnh
