#pragma once

#include <vector>

#include "wnh/opalg/operator.hpp"

namespace wnh {

// Contravariant metric g^{ij}(u) and the objects derived from it.
struct DNData {
    Matrix g_upper;
    Matrix g_lower;
    std::vector<Matrix> christoffel;       // christoffel[k](i, j) = Gamma^k_{ij}
    std::vector<Matrix> b;                 // b[k](i, j) = b^{ij}_k
    std::vector<std::vector<Matrix>> riemann;  // riemann[i][j](k, l) = R^i_{jkl}
    bool flat = false;
    std::vector<std::string> nonzero_curvature;  // "R^i_jkl = value", 1-based
};

DNData dn_validate(const Matrix& g_upper);
Operator dn_operator(const DNData& d);

struct DNCanonical {
    bool is_flat_chart;
    Matrix eta;
    Operator p_can;
};
DNCanonical dn_canonical(const Matrix& g_upper, const ExprVec& psi);

}  // namespace wnh
