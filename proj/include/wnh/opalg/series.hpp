#pragma once

#include <map>
#include <optional>
#include <string>

#include "wnh/opalg/operator.hpp"

namespace wnh {

// sum_{j >= -cutoff} a_j D^j. Coefficients strictly below exact_from may be
// wrong because of truncation upstream; nullopt means no truncation error.
struct TruncatedSeries {
    std::size_t rows = 0, cols = 0;
    int cutoff = 0;
    std::map<int, Matrix> terms;
    std::optional<int> exact_from;
    bool truncated = false;  // some term was dropped below -cutoff

    void add(int degree, const Matrix& m);
    std::optional<int> degree() const;
    Matrix coefficient(int degree) const;
};

TruncatedSeries expand_truncated(const Operator& a, int cutoff);
TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, int cutoff);
// Throws PreconditionError when the leading coefficient is singular.
TruncatedSeries invert_truncated(const Operator& a, int cutoff);
// a o b agrees with the identity for every degree >= -cutoff.
bool is_identity_through(const TruncatedSeries& s, int cutoff);
bool agree_through(const TruncatedSeries& a, const TruncatedSeries& b, int cutoff);

std::string to_string(const TruncatedSeries& s, const Names& names = Names::defaults());

}  // namespace wnh
