#include "qmcap/duality.hpp"

#include <cmath>
#include <stdexcept>

namespace qmcap {

Ensemble dual_ensemble(const DensityMatrix& rho, const POVM& m) {
    if (rho.dim() != m.dim())
        throw std::invalid_argument("dual_ensemble: dimension mismatch");
    Matrix sqrt_rho = matrix_sqrt(rho.mat);
    Ensemble out;
    for (int y = 0; y < m.outcomes(); ++y) {
        const double p = (rho.mat * m.elements[y]).trace().real();
        if (p <= 1e-14) continue;
        out.probs.push_back(p);
        out.states.push_back(sqrt_rho * m.elements[y] * sqrt_rho / p);
        if (m.has_weights()) out.weights.push_back(m.weights[y]);
    }
    double z = 0.0;
    for (double p : out.probs) z += p;
    for (double& p : out.probs) p /= z;
    return out;
}

DualObservable dual_observable(const Ensemble& pi) {
    Diagnostics diag = validate(pi);
    if (!diag.pass) throw std::invalid_argument("dual_observable: invalid ensemble");
    DensityMatrix avg = pi.average();
    EigenSystem es = eigh(avg.mat);
    const double top = es.values.maxCoeff();
    const double cut = kSupportCutoff * top;

    DualObservable out;
    out.average = avg;
    out.full_rank = es.values.minCoeff() > cut;
    Matrix inv_sqrt = matrix_inv_sqrt(avg.mat);
    Matrix support = Matrix::Zero(avg.dim(), avg.dim());
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
        if (es.values[i] > cut)
            support += es.vectors.col(i) * es.vectors.col(i).adjoint();

    Matrix sum = Matrix::Zero(avg.dim(), avg.dim());
    for (int x = 0; x < pi.size(); ++x) {
        Matrix e = pi.probs[x] * inv_sqrt * pi.states[x] * inv_sqrt;
        e = 0.5 * (e + e.adjoint());
        sum += e;
        out.observable.elements.push_back(std::move(e));
    }
    out.observable.weights = pi.weights;
    out.completeness_residual = (sum - support).norm();
    return out;
}

InfoDualityReport info_duality_check(const Ensemble& pi, const POVM& m,
                                     const OptimizerOptions& opts) {
    if (pi.dim() != m.dim())
        throw std::invalid_argument("info_duality_check: dimension mismatch");
    InfoDualityReport rep;
    rep.info_primal = shannon_info(pi, m);

    DualObservable dual = dual_observable(pi);
    Ensemble pi_dual = dual_ensemble(dual.average, m);
    rep.info_dual = shannon_info(pi_dual, dual.observable);
    rep.info_gap = std::abs(rep.info_primal - rep.info_dual);

    rep.chi_dual = holevo_chi(pi_dual);
    rep.mutual = mutual_info(dual.average, m);
    rep.chi_mutual_gap = std::abs(rep.chi_dual - rep.mutual);

    CapacityResult acc = accessible_info(pi_dual, opts);
    rep.accessible_bound = acc.value;
    rep.accessible_within_chi = acc.value <= rep.chi_dual + 1e-9;
    return rep;
}

EqualityReport equality_condition(const DensityMatrix& rho, const POVM& m) {
    if (rho.dim() != m.dim())
        throw std::invalid_argument("equality_condition: dimension mismatch");
    Matrix sqrt_rho = matrix_sqrt(rho.mat);
    EqualityReport rep;
    double scale = 0.0;
    for (int y = 0; y < m.outcomes(); ++y) {
        Matrix left = sqrt_rho * m.elements[y] * rho.mat;
        for (int yp = y + 1; yp < m.outcomes(); ++yp) {
            Matrix a = left * m.elements[yp] * sqrt_rho;
            Matrix b = sqrt_rho * m.elements[yp] * rho.mat * m.elements[y] * sqrt_rho;
            scale = std::max(scale, std::max(a.norm(), b.norm()));
            rep.max_residual = std::max(rep.max_residual, (a - b).norm());
        }
    }
    rep.tolerance = 1e-9 * std::max(scale, 1e-300);
    rep.holds = rep.max_residual <= rep.tolerance;
    return rep;
}

}  // namespace qmcap
