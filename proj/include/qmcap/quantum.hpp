#pragma once

#include <string>
#include <vector>

#include "qmcap/linalg.hpp"

namespace qmcap {

struct DensityMatrix {
    Matrix mat;

    DensityMatrix() = default;
    explicit DensityMatrix(Matrix m) : mat(std::move(m)) {}

    int dim() const { return static_cast<int>(mat.rows()); }

    static DensityMatrix pure(const Vector& psi);
    static DensityMatrix maximally_mixed(int dim);
};

/// Finite POVM. For discretizations of continuous observables the optional
/// weights carry the reference measure of each cell; elements already
/// include them, weights are metadata for differential entropies.
struct POVM {
    std::vector<Matrix> elements;
    std::vector<double> weights;       // empty unless discretized-continuous
    std::vector<std::string> labels;   // optional outcome identifiers

    int dim() const {
        return elements.empty() ? 0 : static_cast<int>(elements[0].rows());
    }
    int outcomes() const { return static_cast<int>(elements.size()); }
    bool has_weights() const { return !weights.empty(); }
};

struct Ensemble {
    std::vector<double> probs;
    std::vector<Matrix> states;
    std::vector<double> weights;  // reference measure when dual to a
                                  // discretized-continuous observable

    int size() const { return static_cast<int>(probs.size()); }
    int dim() const {
        return states.empty() ? 0 : static_cast<int>(states[0].rows());
    }
    bool has_weights() const { return !weights.empty(); }

    DensityMatrix average() const;
};

struct OutcomeDistribution {
    std::vector<double> probs;
    std::vector<double> weights;
    std::vector<std::string> labels;

    bool has_weights() const { return !weights.empty(); }
    /// Shannon entropy, or differential entropy when weights are present.
    double entropy() const;
};

/// One invariant check with its measured residual.
struct ResidualCheck {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Diagnostics {
    std::vector<ResidualCheck> checks;
    bool pass = true;

    void add(const std::string& name, double residual, double tolerance);
};

Diagnostics validate(const DensityMatrix& rho);
Diagnostics validate(const POVM& m);
Diagnostics validate(const Ensemble& pi);

/// p_y = Tr(rho M_y); weights and labels are copied through.
OutcomeDistribution apply_measurement(const DensityMatrix& rho, const POVM& m);

/// Posterior state V_y rho V_y^dag / p_y of the square-root instrument,
/// V_y = M_y^{1/2}. Throws on zero-probability outcomes.
DensityMatrix posterior_state(const DensityMatrix& rho, const POVM& m, int y);

/// Entropy of the complementary channel output,
/// S(M~(rho)) = H(P_rho) + sum_y p_y S(rho(y|M)).
double complementary_entropy(const DensityMatrix& rho, const POVM& m);

/// Unnormalized Bob-side states sigma_w(y) of the assisted protocol:
/// rho^{1/2} conj(E_w^*(M_y)) rho^{1/2}, conjugation in the eigenbasis
/// of rho. The encoding is given by its Kraus operators.
std::vector<Matrix> assisted_output_state(const DensityMatrix& rho,
                                          const std::vector<Matrix>& kraus,
                                          const POVM& m);

}  // namespace qmcap
