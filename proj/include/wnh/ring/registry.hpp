#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wnh/ring/poly.hpp"

namespace wnh {

// Algebraic constants c with c^2 = square, square a non-square rational.
// The table is process-wide and append-only; lookups are thread-safe.
struct ConstantInfo {
    std::string name;
    Rational square;
};

// Returns the existing id when the same declaration is repeated. Throws
// PreconditionError on a conflicting redeclaration or a rational square.
std::uint32_t declare_constant(const std::string& name, const Rational& square);
std::optional<std::uint32_t> find_constant(const std::string& name);
ConstantInfo constant_info(std::uint32_t id);
std::size_t constant_count();

std::string param_name(std::uint32_t index);

// Applies c^2 -> square for every declared constant.
Poly reduce_constants(const Poly& p);

}  // namespace wnh
