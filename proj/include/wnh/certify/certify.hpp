#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wnh/geom/geom.hpp"
#include "wnh/opalg/series.hpp"

namespace wnh {

enum class Status { Verified, Refuted, Inconclusive, NotApplicable };
std::string to_string(Status s);

// Tails written as sum weight * vec (x) D^{-1} o vec^T.
struct WeightedVector {
    Expr weight;
    ExprVec vec;
};

struct SymmetricTails {
    bool ok = false;
    std::string reason;
    std::vector<WeightedVector> terms;
};

// Congruence diagonalization of the tail part over the constants. With
// unit_weights, every weight must become +1 or -1 (square roots are taken
// from rational squares or declared constants).
SymmetricTails symmetric_tails(const std::vector<Tail>& tails, bool unit_weights);

// zeta = int_0^1 (J(u))[lambda u] dlambda for differential J.
ExprVec homotopy_potential(const Operator& j);

// gamma' - gamma'^dagger
Operator exterior(const ExprVec& gamma);

struct SymplecticCertificate {
    Status status = Status::NotApplicable;
    ExprVec gamma0;
    std::vector<std::pair<Expr, Expr>> tail_data;  // (epsilon, H)
    ExprVec gamma;
    Operator residual;
    std::vector<std::string> diagnostics;
};

SymplecticCertificate wnl_symplectic_certificate(const Operator& j,
                                                 const std::optional<std::vector<Expr>>& densities = std::nullopt);

Operator symplectic_from_densities(const std::vector<Expr>& psi, const std::vector<Expr>& eps, std::size_t n);

struct CasimirResult {
    bool casimir;
    ExprVec witness;  // P(delta psi / delta u)
};
std::vector<CasimirResult> casimir_check(const Operator& p, const std::vector<Expr>& psi);

struct JpjDecomposition {
    Status status = Status::NotApplicable;
    std::vector<std::string> diagnostics;
    std::vector<std::pair<Expr, Expr>> psi_data;  // (epsilon, psi) from the tails of J
    std::vector<Expr> k;                          // K_alpha
    std::vector<std::pair<Expr, Expr>> h_data;    // (epsilon~, H_rho)
    std::vector<ExprVec> y;                       // Y_rho
    Operator jpj;
    Operator expected_tails;
    bool tails_match = false;
    ExprVec gamma0;
    ExprVec gamma;
    Operator residual;
};
JpjDecomposition jpj_decompose(const Operator& j, const Operator& pt);

struct CompatibilityCertificate {
    Status status = Status::NotApplicable;
    std::vector<std::string> diagnostics;
    JpjDecomposition jpj;
    ExprVec tau;
    Operator lie;  // L_tau(P)
    Operator residual;
};
CompatibilityCertificate compatibility_certificate(const Operator& p, const Operator& pt, const Operator& j,
                                                   int verify_inverse_to = 8);

struct HamiltonianCertificate {
    Status status = Status::NotApplicable;
    std::vector<std::string> diagnostics;
    std::vector<Expr> l;  // L_rho
    std::vector<Expr> m;  // M_alpha
    ExprVec gamma_tilde0;
    ExprVec gamma_tilde;
    ExprVec tau_tilde;
    Operator residual;         // (J Pt)^2 J - (gt' - gt'^dagger)
    // L_tau(L_tau(P)) - L_tau~(P). Without normality of P this may be
    // nonzero for a Hamiltonian pair (a kernel term is missing), so it
    // does not enter the verdict.
    Operator second_residual;
    bool second_order_holds = false;
};
HamiltonianCertificate hamiltonian_pair_certificate(const Operator& p, const Operator& pt, const Operator& j,
                                                    const CompatibilityCertificate& compat);

struct ZeroOrderResult {
    bool form_ok;
    std::vector<std::string> violations;
    std::optional<SymplecticCertificate> certificate;
};
ZeroOrderResult zero_order_check(const Operator& j);

}  // namespace wnh
