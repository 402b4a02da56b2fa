#pragma once

#include <string>
#include <vector>

#include "wnh/ring/expr.hpp"

namespace wnh {

struct Names {
    std::vector<std::string> fields;

    std::string field(std::uint32_t a) const;
    static const Names& defaults();
};

// Canonical text form; parses back to the same value.
std::string to_string(const Expr& e, const Names& names = Names::defaults());
std::string to_string(const Poly& p, const Names& names = Names::defaults());
std::string var_name(Var v, const Names& names = Names::defaults());

}  // namespace wnh
