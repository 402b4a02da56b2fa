#pragma once

#include <array>
#include <vector>

#include "wnh/certify/certify.hpp"

namespace wnh {

// Independent evaluations over a list of inputs. With parallel == false the
// loop runs serially in order; that path is the reference the OpenMP one
// is tested against. The first exception raised by any item is rethrown.

using CovectorTriple = std::array<ExprVec, 3>;

std::vector<ClassResult> schouten_batch(const Operator& h, const Operator& k, const std::vector<CovectorTriple>& triples,
                                        bool parallel = true);

std::vector<Status> symplectic_batch(const std::vector<Operator>& ops, bool parallel = true);

std::vector<ExprVec> euler_batch(const std::vector<Expr>& densities, std::size_t n, bool parallel = true);

int batch_threads();

}  // namespace wnh
