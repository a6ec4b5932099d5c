#include "qmcap/capacity.hpp"

#include <cmath>
#include <stdexcept>

#include "optim.hpp"

namespace qmcap {

namespace {

double entropy_of_spectrum(const RealVector& vals) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals[i] > 0.0) h -= vals[i] * std::log(vals[i]);
    return h;
}

Vector params_to_unit_vector(const double* p, int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(p[2 * i], p[2 * i + 1]);
    const double n = v.norm();
    if (n < 1e-300) {
        v.setZero();
        v[0] = 1.0;
        return v;
    }
    return v / n;
}

void seed_vector_params(std::vector<double>& p, const Vector& v, int offset) {
    for (int i = 0; i < v.size(); ++i) {
        p[offset + 2 * i] = v[i].real();
        p[offset + 2 * i + 1] = v[i].imag();
    }
}

/// Orthonormal (Frobenius) basis of trace-zero Hermitian matrices.
std::vector<Matrix> hermitian_tangent_basis(int d) {
    std::vector<Matrix> basis;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix re = Matrix::Zero(d, d);
            re(i, j) = inv_sqrt2;
            re(j, i) = inv_sqrt2;
            basis.push_back(re);
            Matrix im = Matrix::Zero(d, d);
            im(i, j) = Complex(0, -inv_sqrt2);
            im(j, i) = Complex(0, inv_sqrt2);
            basis.push_back(im);
        }
    }
    for (int k = 1; k < d; ++k) {
        Matrix diag = Matrix::Zero(d, d);
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int i = 0; i < k; ++i) diag(i, i) = 1.0 / norm;
        diag(k, k) = -static_cast<double>(k) / norm;
        basis.push_back(diag);
    }
    return basis;
}

/// Projection onto the density-matrix set (PSD, unit trace).
Matrix project_density(const Matrix& h) {
    EigenSystem es = eigh(0.5 * (h + h.adjoint()));
    Eigen::VectorXd lam = optim::project_simplex(es.values);
    return es.vectors * lam.asDiagonal() * es.vectors.adjoint();
}

/// Precomputed per-POVM data for repeated information evaluations.
struct MeasurementEvaluator {
    const POVM* povm = nullptr;
    std::vector<Matrix> sqrt_elements;
    std::vector<bool> rank_one;
    Matrix rank_one_vectors;  // columns a_y with M_y = a_y a_y^dag, if all rank one
    bool all_rank_one = false;

    explicit MeasurementEvaluator(const POVM& m) : povm(&m) {
        const int d = m.dim();
        sqrt_elements.reserve(m.outcomes());
        rank_one.reserve(m.outcomes());
        all_rank_one = true;
        rank_one_vectors.resize(d, m.outcomes());
        for (int y = 0; y < m.outcomes(); ++y) {
            EigenSystem es = eigh(m.elements[y]);
            const double top = es.values[d - 1];
            bool r1 = true;
            for (int i = 0; i < d - 1; ++i)
                if (es.values[i] > 1e-12 * std::max(top, 1e-300)) r1 = false;
            rank_one.push_back(r1);
            all_rank_one = all_rank_one && r1;
            if (r1)
                rank_one_vectors.col(y) =
                    es.vectors.col(d - 1) * std::sqrt(std::max(top, 0.0));
            RealVector roots = es.values.cwiseMax(0.0).cwiseSqrt();
            sqrt_elements.push_back(es.vectors * roots.asDiagonal() *
                                    es.vectors.adjoint());
        }
    }

    std::vector<double> outcome_probs(const Matrix& rho) const {
        std::vector<double> p(povm->outcomes());
        for (int y = 0; y < povm->outcomes(); ++y)
            p[y] = (rho * povm->elements[y]).trace().real();
        return p;
    }

    /// p_y = <psi|M_y|psi> for a pure state.
    std::vector<double> outcome_probs(const Vector& psi) const {
        std::vector<double> p(povm->outcomes());
        if (all_rank_one) {
            Vector amps = rank_one_vectors.adjoint() * psi;
            for (int y = 0; y < povm->outcomes(); ++y) p[y] = std::norm(amps[y]);
        } else {
            for (int y = 0; y < povm->outcomes(); ++y)
                p[y] = (psi.adjoint() * povm->elements[y] * psi)(0).real();
        }
        return p;
    }

    /// Output entropy H(P_rho), differential when the POVM carries weights.
    double output_entropy(const std::vector<double>& probs) const {
        std::vector<double> p = probs;
        double total = 0.0;
        for (double& v : p) {
            v = std::max(0.0, v);
            total += v;
        }
        for (double& v : p) v /= total;
        if (povm->has_weights()) return differential_entropy(p, povm->weights);
        double h = 0.0;
        for (double v : p)
            if (v > 0.0) h -= v * std::log(v);
        return h;
    }

    /// I(rho; M) = S(rho) - sum_y p_y S(rho(y|M)).
    double quantum_mutual_info(const Matrix& rho) const {
        double info = von_neumann_entropy(rho);
        if (all_rank_one) return info;  // pure posteriors
        std::vector<double> p = outcome_probs(rho);
        for (int y = 0; y < povm->outcomes(); ++y) {
            if (p[y] <= 1e-14 || rank_one[y]) continue;
            Matrix blk = sqrt_elements[y] * rho * sqrt_elements[y];
            info -= entropy_of_spectrum(eigh(blk).values / p[y]) * p[y];
        }
        return info;
    }
};

std::uint64_t restart_seed(std::uint64_t base, int restart) {
    return base * 1000003ULL + 0x9e3779b97f4a7c15ULL + restart;
}

void check_dims(const DensityMatrix& rho, const POVM& m, const char* who) {
    if (rho.dim() != m.dim())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

/// Thin-QR orthonormalization of an n x d matrix (n >= d).
Matrix stiefel_point(const Matrix& g) {
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    return q;
}

Matrix params_to_matrix(const std::vector<double>& p, int rows, int cols) {
    Matrix g(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            g(i, j) = Complex(p[k], p[k + 1]);
            k += 2;
        }
    return g;
}

std::vector<double> matrix_to_params(const Matrix& g) {
    std::vector<double> p(2 * g.rows() * g.cols());
    int k = 0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            p[k] = g(i, j).real();
            p[k + 1] = g(i, j).imag();
            k += 2;
        }
    return p;
}

struct LagrangianSolve {
    std::function<CapacityResult(double lambda)> solve;
    const ConstraintSpec* constraint;

    CapacityResult run() const {
        CapacityResult unconstrained = solve(0.0);
        if (!constraint) return unconstrained;
        const Matrix& e = constraint->observable;
        const double bound = constraint->bound;
        double emin = eigh(e).values.minCoeff();
        if (emin > bound + 1e-12)
            throw std::invalid_argument("constraint infeasible: min Tr(rho E) > N");
        auto cost = [&](const CapacityResult& r) {
            return (r.achiever_state.mat * e).trace().real();
        };
        if (cost(unconstrained) <= bound + 1e-9 * std::max(1.0, std::abs(bound)))
            return unconstrained;
        double lo = 0.0, hi = 1.0;
        CapacityResult at_hi = solve(hi);
        int guard = 0;
        while (cost(at_hi) > bound && guard++ < 60) {
            hi *= 2.0;
            at_hi = solve(hi);
        }
        CapacityResult best = at_hi;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            CapacityResult r = solve(mid);
            const double c = cost(r);
            if (c <= bound) {
                hi = mid;
                best = r;
            } else {
                lo = mid;
            }
            if (std::abs(c - bound) < 1e-6 * std::max(std::abs(bound), 1e-6))
                return c <= bound ? r : best;
            // The achieved cost varies continuously in lambda, so a
            // converged multiplier interval is as good as a matched cost.
            if (hi - lo < 1e-9 * std::max(1.0, hi)) break;
        }
        return best;
    }
};

}  // namespace

double shannon_info(const Ensemble& pi, const POVM& m) {
    if (pi.dim() != m.dim())
        throw std::invalid_argument("shannon_info: dimension mismatch");
    MeasurementEvaluator eval(m);
    std::vector<double> avg(m.outcomes(), 0.0);
    double info = 0.0;
    for (int x = 0; x < pi.size(); ++x) {
        if (pi.probs[x] <= 0.0) continue;
        std::vector<double> p = eval.outcome_probs(pi.states[x]);
        info -= pi.probs[x] * eval.output_entropy(p);
        for (int y = 0; y < m.outcomes(); ++y) avg[y] += pi.probs[x] * p[y];
    }
    info += eval.output_entropy(avg);
    return info;
}

double holevo_chi(const Ensemble& pi) {
    double chi = von_neumann_entropy(pi.average().mat);
    for (int x = 0; x < pi.size(); ++x)
        if (pi.probs[x] > 0.0)
            chi -= pi.probs[x] * von_neumann_entropy(pi.states[x]);
    return chi;
}

double mutual_info(const DensityMatrix& rho, const POVM& m) {
    check_dims(rho, m, "mutual_info");
    return MeasurementEvaluator(m).quantum_mutual_info(rho.mat);
}

CapacityResult chi_measurement(const DensityMatrix& rho, const POVM& m,
                               const OptimizerOptions& opts) {
    check_dims(rho, m, "chi_measurement");
    const int d = rho.dim();
    const int support =
        opts.max_support > 0 ? std::min(opts.max_support, d * d) : d * d;

    MeasurementEvaluator eval(m);
    const double h_rho = eval.output_entropy(eval.outcome_probs(rho.mat));
    const Matrix sqrt_rho = matrix_sqrt(rho.mat);

    // sum_x pi_x H(P_x) for the decomposition generated by the co-isometry
    // read off the thin-QR of the raw parameter matrix.
    auto conditional_term = [&](const std::vector<double>& params) {
        Matrix q = stiefel_point(params_to_matrix(params, support, d));
        double total = 0.0;
        for (int x = 0; x < support; ++x) {
            Vector u = q.row(x).conjugate().transpose();
            Vector v = sqrt_rho * u;
            const double px = v.squaredNorm();
            if (px <= 1e-14) continue;
            std::vector<double> p = eval.outcome_probs(Vector(v / std::sqrt(px)));
            total += px * eval.output_entropy(p);
        }
        return total;
    };

    optim::FdOptions fd;
    fd.step = opts.fd_step;
    fd.tol = opts.tol;
    fd.max_iters = opts.max_iters;

    CapacityResult best;
    best.value = -1e300;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        Matrix init;
        if (r == 0) {
            init = Matrix::Zero(support, d);
            init.topRows(d) = Matrix::Identity(d, d);
        } else {
            HaarSampler sampler(restart_seed(opts.seed, r));
            init.resize(support, d);
            for (int i = 0; i < support; ++i)
                for (int j = 0; j < d; ++j) init(i, j) = sampler.gaussian();
        }
        optim::FdResult res = fd_maximize(
            [&](const std::vector<double>& p) { return -conditional_term(p); },
            matrix_to_params(init), fd);
        const double value = h_rho + res.value;
        if (value > best.value + 1e-12) {
            best.value = value;
            best.iterations = res.iterations;
            best.residual = res.grad_norm;
            best.lower_bound_flag = !res.converged;
            Matrix q = stiefel_point(params_to_matrix(res.params, support, d));
            Ensemble achiever;
            for (int x = 0; x < support; ++x) {
                Vector u = q.row(x).conjugate().transpose();
                Vector v = sqrt_rho * u;
                const double px = v.squaredNorm();
                if (px <= 1e-10) continue;
                achiever.probs.push_back(px);
                achiever.states.push_back(v * v.adjoint() / px);
            }
            double z = 0.0;
            for (double p : achiever.probs) z += p;
            for (double& p : achiever.probs) p /= z;
            best.achiever_ensemble = std::move(achiever);
        }
        best.restarts = r + 1;
    }
    best.achiever_state = rho;
    return best;
}

CapacityResult capacity_Cea(const POVM& m,
                            const std::optional<ConstraintSpec>& constraint,
                            const OptimizerOptions& opts) {
    Diagnostics diag = validate(m);
    if (!diag.pass) throw std::invalid_argument("capacity_Cea: invalid POVM");
    const int d = m.dim();
    MeasurementEvaluator eval(m);
    const std::vector<Matrix> basis = hermitian_tangent_basis(d);

    auto solve = [&](double lambda) {
        auto objective = [&](const Matrix& rho) {
            double v = eval.quantum_mutual_info(rho);
            if (constraint && lambda != 0.0)
                v -= lambda * (rho * constraint->observable).trace().real();
            return v;
        };

        CapacityResult best;
        best.value = -1e300;
        for (int r = 0; r < std::max(1, opts.restarts); ++r) {
            Matrix rho;
            if (r == 0) {
                rho = Matrix::Identity(d, d) / static_cast<double>(d);
            } else {
                HaarSampler sampler(restart_seed(opts.seed, r));
                Vector psi = sampler.pure(d);
                rho = 0.5 * (psi * psi.adjoint()) +
                      0.5 * Matrix::Identity(d, d) / static_cast<double>(d);
            }
            double value = objective(rho);
            double rate = 0.25;
            double gnorm = 0.0;
            int iter = 0;
            for (; iter < opts.max_iters; ++iter) {
                Eigen::VectorXd g(basis.size());
                for (std::size_t k = 0; k < basis.size(); ++k) {
                    const double up = objective(
                        project_density(rho + opts.fd_step * basis[k]));
                    const double dn = objective(
                        project_density(rho - opts.fd_step * basis[k]));
                    g[k] = (up - dn) / (2.0 * opts.fd_step);
                }
                gnorm = g.norm();
                if (gnorm < opts.tol) break;
                Matrix dir = Matrix::Zero(d, d);
                for (std::size_t k = 0; k < basis.size(); ++k)
                    dir += (g[k] / gnorm) * basis[k];
                bool accepted = false;
                for (int back = 0; back < 40; ++back) {
                    Matrix trial = project_density(rho + rate * dir);
                    const double v = objective(trial);
                    if (v > value) {
                        rho = std::move(trial);
                        value = v;
                        rate *= 1.5;
                        accepted = true;
                        break;
                    }
                    rate *= 0.5;
                    if (rate < 1e-14) break;
                }
                if (!accepted) break;
            }
            if (value > best.value + 1e-12) {
                best.value = value;
                best.achiever_state = DensityMatrix(rho);
                best.iterations = iter;
                best.residual = gnorm;
                best.lower_bound_flag = gnorm >= opts.tol;
            }
            best.restarts = r + 1;
        }
        // Report the information value itself, not the Lagrangian.
        if (constraint && lambda != 0.0)
            best.value = eval.quantum_mutual_info(best.achiever_state.mat);
        return best;
    };

    LagrangianSolve driver{solve, constraint ? &*constraint : nullptr};
    return driver.run();
}

CapacityResult capacity_C(const POVM& m,
                          const std::optional<ConstraintSpec>& constraint,
                          const OptimizerOptions& opts) {
    Diagnostics diag = validate(m);
    if (!diag.pass) throw std::invalid_argument("capacity_C: invalid POVM");
    const int d = m.dim();
    const int support =
        opts.max_support > 0 ? std::min(opts.max_support, d * d) : d * d;
    MeasurementEvaluator eval(m);

    auto channel_rows = [&](const std::vector<Vector>& states) {
        Eigen::MatrixXd w(support, m.outcomes());
        for (int x = 0; x < support; ++x) {
            std::vector<double> p = eval.outcome_probs(states[x]);
            for (int y = 0; y < m.outcomes(); ++y) w(x, y) = std::max(0.0, p[y]);
        }
        return w;
    };

    auto prior_cost = [](const Eigen::VectorXd& prior,
                         const Eigen::VectorXd& cost) {
        return prior.dot(cost);
    };

    auto solve = [&](double lambda) {
        CapacityResult best;
        best.value = -1e300;
        double best_score = -1e300;
        for (int r = 0; r < std::max(1, opts.restarts); ++r) {
            std::vector<Vector> states(support);
            HaarSampler sampler(restart_seed(opts.seed, r));
            if (r == 0) {
                // Dominant eigenvectors of the POVM elements, Haar-filled.
                for (int x = 0; x < support; ++x) {
                    if (x < m.outcomes() && x < support) {
                        EigenSystem es = eigh(m.elements[x % m.outcomes()]);
                        states[x] = es.vectors.col(d - 1);
                    } else {
                        states[x] = sampler.pure(d);
                    }
                }
            } else {
                for (int x = 0; x < support; ++x) states[x] = sampler.pure(d);
            }

            double value = -1e300;
            double state_resid = 0.0;
            int total_iters = 0;

            // Nested objective: for each trial support set, Blahut-Arimoto
            // solves the (concave) prior problem, and the outer
            // finite-difference ascent only searches over the states. A
            // floored prior (mixed with uniform) keeps gradient signal on
            // states the exact prior would drop, since those otherwise sit
            // in a zero-subgradient dead zone and never move. The first
            // phase searches with the floor, the second polishes without it.
            // The inner tolerance sits well below the finite-difference step
            // so gradient noise stays negligible.
            auto state_objective = [&](const std::vector<double>& params,
                                       double floor_mix) {
                std::vector<Vector> trial(support);
                for (int x = 0; x < support; ++x)
                    trial[x] =
                        params_to_unit_vector(params.data() + 2 * d * x, d);
                Eigen::MatrixXd wt = channel_rows(trial);
                Eigen::VectorXd cost(support);
                optim::BaOptions ba;
                // Loose inner solves: the BA truncation error varies smoothly
                // with the states, and the final exact pass below re-reports
                // the value, so the search only needs consistent gradients.
                ba.tol = 1e-8;
                ba.max_iters = 2000;
                if (constraint && lambda != 0.0) {
                    for (int x = 0; x < support; ++x)
                        cost[x] = (trial[x].adjoint() * constraint->observable *
                                   trial[x])(0)
                                      .real();
                    ba.lambda = lambda;
                    ba.cost = &cost;
                }
                optim::BaResult bares = optim::blahut_arimoto(wt, ba);
                Eigen::VectorXd prior =
                    (1.0 - floor_mix) * bares.prior +
                    floor_mix *
                        Eigen::VectorXd::Constant(support, 1.0 / support);
                double v = optim::classical_mutual_information(prior, wt);
                if (constraint && lambda != 0.0) v -= lambda * prior.dot(cost);
                return v;
            };
            std::vector<double> params(2 * d * support);
            for (int x = 0; x < support; ++x)
                seed_vector_params(params, states[x], 2 * d * x);
            optim::FdOptions fd;
            fd.step = opts.fd_step;
            fd.tol = opts.tol;
            fd.max_iters = opts.max_iters;
            optim::FdOptions fd_explore = fd;
            fd_explore.max_iters = std::min(150, opts.max_iters);
            fd_explore.tol = 10.0 * opts.tol;
            optim::FdResult explore = fd_maximize(
                [&](const std::vector<double>& p) {
                    return state_objective(p, 0.05);
                },
                params, fd_explore);
            optim::FdResult fres = fd_maximize(
                [&](const std::vector<double>& p) {
                    return state_objective(p, 0.0);
                },
                explore.params, fd);
            for (int x = 0; x < support; ++x)
                states[x] =
                    params_to_unit_vector(fres.params.data() + 2 * d * x, d);
            state_resid = fres.grad_norm;
            total_iters += explore.iterations + fres.iterations;
            value = fres.value;

            // Final BA pass so the reported prior matches the final states.
            // Keeps the penalty so constrained solutions stay feasible; the
            // reported value is the plain mutual information, not the
            // Lagrangian.
            Eigen::MatrixXd w = channel_rows(states);
            Eigen::VectorXd cost(support);
            optim::BaOptions ba;
            ba.tol = opts.ba_tol;
            if (constraint && lambda != 0.0) {
                for (int x = 0; x < support; ++x)
                    cost[x] = (states[x].adjoint() * constraint->observable *
                               states[x])(0)
                                  .real();
                ba.lambda = lambda;
                ba.cost = &cost;
            }
            optim::BaResult bares = optim::blahut_arimoto(w, ba);
            value = optim::classical_mutual_information(bares.prior, w);
            // Restarts compete on the Lagrangian; the report keeps the
            // information value.
            double score = value;
            if (constraint && lambda != 0.0) score -= lambda * prior_cost(bares.prior, cost);

            if (score > best_score + 1e-12) {
                best_score = score;
                best.value = value;
                best.iterations = total_iters;
                best.residual = state_resid + bares.gap;
                best.lower_bound_flag = state_resid >= opts.tol;
                Ensemble achiever;
                Matrix avg = Matrix::Zero(d, d);
                for (int x = 0; x < support; ++x) {
                    if (bares.prior[x] <= 1e-10) continue;
                    achiever.probs.push_back(bares.prior[x]);
                    achiever.states.push_back(states[x] * states[x].adjoint());
                }
                double z = 0.0;
                for (double p : achiever.probs) z += p;
                for (double& p : achiever.probs) p /= z;
                for (std::size_t x = 0; x < achiever.probs.size(); ++x)
                    avg += achiever.probs[x] * achiever.states[x];
                best.achiever_ensemble = std::move(achiever);
                best.achiever_state = DensityMatrix(avg);
            }
            best.restarts = r + 1;
        }
        return best;
    };

    LagrangianSolve driver{solve, constraint ? &*constraint : nullptr};
    return driver.run();
}

CapacityResult covariant_capacity(const POVM& m, const OptimizerOptions& opts) {
    Diagnostics diag = validate(m);
    if (!diag.pass)
        throw std::invalid_argument("covariant_capacity: invalid POVM");
    const int d = m.dim();
    MeasurementEvaluator eval(m);

    // Covariance sanity: equal-trace, unitarily equivalent elements. For
    // Monte Carlo discretizations the tolerance has to absorb cell noise.
    double tmin = 1e300, tmax = -1e300;
    for (const Matrix& e : m.elements) {
        const double t = e.trace().real();
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (tmin <= 0.0 || (tmax - tmin) / tmax > 0.2)
        throw std::invalid_argument(
            "covariant_capacity: POVM elements are not covariant (traces differ)");

    DensityMatrix mixed = DensityMatrix::maximally_mixed(d);
    const double h_mixed = eval.output_entropy(eval.outcome_probs(mixed.mat));

    auto pure_output_entropy = [&](const std::vector<double>& params) {
        Vector psi = params_to_unit_vector(params.data(), d);
        return eval.output_entropy(eval.outcome_probs(psi));
    };

    optim::FdOptions fd;
    fd.step = opts.fd_step;
    fd.tol = opts.tol;
    fd.max_iters = opts.max_iters;

    CapacityResult best;
    double h_min = 1e300;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        Vector init;
        if (r == 0) {
            init = Vector::Zero(d);
            init[0] = 1.0;
        } else {
            init = haar_random_pure(d, restart_seed(opts.seed, r));
        }
        std::vector<double> params(2 * d);
        seed_vector_params(params, init, 0);
        optim::FdResult res = fd_maximize(
            [&](const std::vector<double>& p) { return -pure_output_entropy(p); },
            params, fd);
        if (-res.value < h_min - 1e-12) {
            h_min = -res.value;
            best.iterations = res.iterations;
            best.residual = res.grad_norm;
            best.lower_bound_flag = !res.converged;
            best.achiever_state = DensityMatrix::pure(
                params_to_unit_vector(res.params.data(), d));
        }
        best.restarts = r + 1;
    }
    best.value = h_mixed - h_min;
    return best;
}

CapacityResult accessible_info(const Ensemble& pi, const OptimizerOptions& opts) {
    Diagnostics diag = validate(pi);
    if (!diag.pass) throw std::invalid_argument("accessible_info: invalid ensemble");
    const int d = pi.dim();
    if (d > opts.max_dim)
        throw std::invalid_argument("accessible_info: dimension exceeds max_dim");
    const int outcomes = d * d;
    const int nstates = pi.size();

    // Pure-state fast path: stack state vectors so the conditional
    // probabilities reduce to one matrix product per evaluation.
    bool all_pure = true;
    Matrix state_vectors(d, nstates);
    for (int x = 0; x < nstates && all_pure; ++x) {
        EigenSystem es = eigh(pi.states[x]);
        if (es.values[d - 1] < 1.0 - 1e-10) {
            all_pure = false;
        } else {
            state_vectors.col(x) = es.vectors.col(d - 1);
        }
    }
    Eigen::VectorXd prior(nstates);
    for (int x = 0; x < nstates; ++x) prior[x] = pi.probs[x];

    // I(pi; M(Q)) for rank-one POVM M_y = u_y u_y^dag, u_y from the rows of
    // the Stiefel point Q, so completeness holds exactly at every iterate.
    auto info_of = [&](const std::vector<double>& params) {
        Matrix q = stiefel_point(params_to_matrix(params, outcomes, d));
        Eigen::MatrixXd w(nstates, outcomes);
        if (all_pure) {
            Matrix amps = q * state_vectors;  // (y, x)
            for (int x = 0; x < nstates; ++x)
                for (int y = 0; y < outcomes; ++y)
                    w(x, y) = std::norm(amps(y, x));
        } else {
            for (int y = 0; y < outcomes; ++y) {
                Vector u = q.row(y).conjugate().transpose();
                for (int x = 0; x < nstates; ++x)
                    w(x, y) = std::max(
                        0.0, (u.adjoint() * pi.states[x] * u)(0).real());
            }
        }
        return optim::classical_mutual_information(prior, w);
    };

    optim::FdOptions fd;
    fd.step = opts.fd_step;
    fd.tol = opts.tol;
    fd.max_iters = opts.max_iters;

    CapacityResult best;
    best.value = -1e300;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        Matrix init(outcomes, d);
        if (r == 0) {
            // Repeated computational basis directions (a valid co-isometry).
            init.setZero();
            const double amp = std::sqrt(static_cast<double>(d) / outcomes);
            for (int y = 0; y < outcomes; ++y) init(y, y % d) = amp;
        } else {
            HaarSampler sampler(restart_seed(opts.seed, r));
            for (int y = 0; y < outcomes; ++y)
                for (int j = 0; j < d; ++j) init(y, j) = sampler.gaussian();
        }
        optim::FdResult res = fd_maximize(info_of, matrix_to_params(init), fd);
        if (res.value > best.value + 1e-12) {
            best.value = res.value;
            best.iterations = res.iterations;
            best.residual = res.grad_norm;
        }
        best.restarts = r + 1;
    }
    best.lower_bound_flag = true;  // non-convex seesaw, certified lower bound only
    best.achiever_state = pi.average();
    return best;
}

}  // namespace qmcap
