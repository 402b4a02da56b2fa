#pragma once

#include <cstdint>

#include "wnh/ring/poly.hpp"

namespace wnh {

// n (n-1) ... (n-k+1) / k!, for any integer n.
inline Rational binomial(long n, std::uint32_t k) {
    Rational r(1);
    for (std::uint32_t i = 0; i < k; ++i) r = r * Rational(n - static_cast<long>(i)) / Rational(static_cast<long>(i + 1));
    return r;
}

}  // namespace wnh
