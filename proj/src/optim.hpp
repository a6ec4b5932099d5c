#pragma once

// Internal optimization helpers shared by the capacity module.

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace qmcap::optim {

struct FdOptions {
    double step = 1e-5;       // central-difference step
    double tol = 1e-6;        // first-order (gradient norm) tolerance
    int max_iters = 400;
    double init_rate = 0.25;  // initial ascent step size
};

struct FdResult {
    double value = 0.0;
    std::vector<double> params;
    int iterations = 0;
    double grad_norm = 0.0;
    bool converged = false;
};

/// Gradient ascent with central finite differences and adaptive step size.
/// Any feasibility structure (normalization, retraction) is the objective's
/// responsibility.
FdResult fd_maximize(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const FdOptions& opts);

/// Euclidean projection of a real vector onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

struct BaOptions {
    double tol = 1e-9;   // relative gap between BA upper and lower bounds
    int max_iters = 20000;
    double lambda = 0.0;            // Lagrange multiplier for the input cost
    const Eigen::VectorXd* cost = nullptr;  // per-input cost, optional
};

struct BaResult {
    Eigen::VectorXd prior;
    double value = 0.0;  // Lagrangian-corrected mutual information, nats
    int iterations = 0;
    double gap = 0.0;
};

/// Blahut-Arimoto over the input prior of the classical channel with
/// conditional rows w (inputs x outputs). With a cost vector, maximizes
/// I(p) - lambda * <p, cost>. The iteration is monotone in the objective.
BaResult blahut_arimoto(const Eigen::MatrixXd& w, const BaOptions& opts);

/// Mutual information of prior p through channel rows w, in nats.
double classical_mutual_information(const Eigen::VectorXd& p,
                                    const Eigen::MatrixXd& w);

}  // namespace qmcap::optim
