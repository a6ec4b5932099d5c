#pragma once

#include "qmcap/capacity.hpp"
#include "qmcap/quantum.hpp"

namespace qmcap {

/// A state/observable/ensemble triple related by the duality transform.
struct DualPair {
    DensityMatrix state;   // average state rho_bar
    POVM observable;
    Ensemble ensemble;
    std::string direction;  // "to-ensemble" or "to-observable"
};

/// Ensemble dual to (rho, M):
/// pi' = { Tr(rho M_y), rho^{1/2} M_y rho^{1/2} / Tr(rho M_y) }.
/// Outcomes with probability <= 1e-14 are dropped; POVM weights forward.
Ensemble dual_ensemble(const DensityMatrix& rho, const POVM& m);

/// Observable dual to the ensemble:
/// M'_x = p_x rho_bar^{-1/2} rho_x rho_bar^{-1/2} (support convention for
/// rank-deficient averages). Returns the average state alongside.
struct DualObservable {
    DensityMatrix average;
    POVM observable;
    /// || sum M'_x - support projector ||_F
    double completeness_residual = 0.0;
    bool full_rank = true;
};
DualObservable dual_observable(const Ensemble& pi);

struct InfoDualityReport {
    double info_primal = 0.0;       // I(pi, M)
    double info_dual = 0.0;         // I(pi', M')
    double info_gap = 0.0;          // |difference|
    double chi_dual = 0.0;          // chi(pi'_rho) at rho = rho_bar
    double mutual = 0.0;            // I(rho_bar; M)
    double chi_mutual_gap = 0.0;    // |chi(pi') - I(rho;M)|
    double accessible_bound = 0.0;  // seesaw lower bound on A(pi')
    bool accessible_within_chi = false;
};

/// Evaluates the Shannon-information duality and the chi / mutual-information
/// identity on a concrete instance. Purely diagnostic.
InfoDualityReport info_duality_check(const Ensemble& pi, const POVM& m,
                                     const OptimizerOptions& opts = {});

struct EqualityReport {
    bool holds = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
};

/// Commutation criterion for C = C_ea at rho: checks
/// rho^{1/2} M_y rho M_{y'} rho^{1/2} == rho^{1/2} M_{y'} rho M_y rho^{1/2}
/// over all outcome pairs.
EqualityReport equality_condition(const DensityMatrix& rho, const POVM& m);

}  // namespace qmcap
