#pragma once

#include <optional>

#include "qmcap/quantum.hpp"

namespace qmcap {

struct OptimizerOptions {
    double tol = 1e-6;       // outer first-order tolerance
    double ba_tol = 1e-9;    // Blahut-Arimoto relative stopping gap
    int restarts = 16;
    int max_iters = 400;
    double fd_step = 1e-5;   // finite-difference step on Hermitian tangents
    std::uint64_t seed = 0;
    int max_support = 0;     // 0 means dim^2
    int max_dim = 4;         // accessible_info guard (seesaw cost blows up)
};

struct CapacityResult {
    double value = 0.0;  // nats
    Ensemble achiever_ensemble;
    DensityMatrix achiever_state;
    int iterations = 0;
    int restarts = 0;
    double residual = 0.0;
    bool lower_bound_flag = false;
};

/// Input constraint Tr(rho E) <= bound.
struct ConstraintSpec {
    Matrix observable;  // Hermitian E
    double bound = 0.0; // N
};

/// Shannon information I(pi; M) = H(P_avg) - sum_x pi_x H(P_x).
/// Uses differential entropies when M carries weights (the reference
/// measure cancels, so the value coincides with the discrete difference).
double shannon_info(const Ensemble& pi, const POVM& m);

/// Holevo quantity chi(pi) = S(avg) - sum_x p_x S(rho_x).
double holevo_chi(const Ensemble& pi);

/// Quantum mutual information I(rho; M) = S(rho) - sum_y p_y S(rho(y|M)).
double mutual_info(const DensityMatrix& rho, const POVM& m);

/// chi of the measurement channel at fixed rho:
/// H(P_rho) - inf over pure decompositions of rho of sum pi_x H(P_x).
/// The inner infimum is searched over isometry-parametrized decompositions;
/// lower_bound_flag stays set unless the first-order residual meets tol.
CapacityResult chi_measurement(const DensityMatrix& rho, const POVM& m,
                               const OptimizerOptions& opts = {});

/// Unassisted classical capacity C = sup_pi I(pi; M). Blahut-Arimoto on the
/// prior alternating with gradient refinement of the pure support states.
CapacityResult capacity_C(const POVM& m,
                          const std::optional<ConstraintSpec>& constraint = {},
                          const OptimizerOptions& opts = {});

/// Entanglement-assisted capacity C_ea = sup_rho I(rho; M), by projected
/// gradient ascent over density matrices (concave objective).
CapacityResult capacity_Cea(const POVM& m,
                            const std::optional<ConstraintSpec>& constraint = {},
                            const OptimizerOptions& opts = {});

/// Capacity of a covariant rank-one observable:
/// C = H(M(I/m)) - min_psi H(M(|psi><psi|)), differential entropies when the
/// POVM is a discretized continuous observable.
CapacityResult covariant_capacity(const POVM& m,
                                  const OptimizerOptions& opts = {});

/// Seesaw lower bound on the accessible information A(pi); the POVM search
/// runs over rank-one observables with up to dim^2 outcomes parametrized by
/// an isometry, so completeness is exact throughout.
CapacityResult accessible_info(const Ensemble& pi,
                               const OptimizerOptions& opts = {});

}  // namespace qmcap
