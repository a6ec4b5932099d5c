#include "qmcap/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace qmcap {

DensityMatrix DensityMatrix::pure(const Vector& psi) {
    const double n2 = psi.squaredNorm();
    if (n2 <= 0.0)
        throw std::invalid_argument("DensityMatrix::pure: zero vector");
    return DensityMatrix((psi * psi.adjoint()) / n2);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix Ensemble::average() const {
    if (states.empty()) throw std::invalid_argument("Ensemble: empty");
    Matrix avg = Matrix::Zero(dim(), dim());
    for (int x = 0; x < size(); ++x) avg += probs[x] * states[x];
    return DensityMatrix(avg);
}

double OutcomeDistribution::entropy() const {
    return has_weights() ? differential_entropy(probs, weights)
                         : shannon_entropy(probs);
}

void Diagnostics::add(const std::string& name, double residual,
                      double tolerance) {
    const bool ok = residual <= tolerance;
    checks.push_back({name, residual, tolerance, ok});
    pass = pass && ok;
}

namespace {

double min_eigenvalue(const Matrix& h) {
    return eigh(h).values.minCoeff();
}

}  // namespace

Diagnostics validate(const DensityMatrix& rho) {
    Diagnostics d;
    d.add("hermitian", (rho.mat - rho.mat.adjoint()).norm(), 1e-9);
    d.add("trace_one", std::abs(rho.mat.trace().real() - 1.0) +
                           std::abs(rho.mat.trace().imag()),
          1e-9);
    Matrix sym = 0.5 * (rho.mat + rho.mat.adjoint());
    d.add("positive", std::max(0.0, -min_eigenvalue(sym)), 1e-10);
    return d;
}

Diagnostics validate(const POVM& m) {
    Diagnostics d;
    if (m.elements.empty()) {
        d.add("nonempty", 1.0, 0.0);
        return d;
    }
    const int n = m.dim();
    Matrix sum = Matrix::Zero(n, n);
    double worst_herm = 0.0, worst_neg = 0.0;
    for (const Matrix& e : m.elements) {
        worst_herm = std::max(worst_herm, (e - e.adjoint()).norm());
        worst_neg = std::max(worst_neg, -min_eigenvalue(0.5 * (e + e.adjoint())));
        sum += e;
    }
    d.add("elements_hermitian", worst_herm, 1e-9);
    d.add("elements_psd", std::max(0.0, worst_neg), 1e-10);
    d.add("completeness", (sum - Matrix::Identity(n, n)).norm(), 1e-8);
    if (m.has_weights()) {
        double wmin = *std::min_element(m.weights.begin(), m.weights.end());
        d.add("weights_positive", std::max(0.0, -wmin), 0.0);
        d.add("weights_count",
              std::abs(static_cast<double>(m.weights.size()) - m.outcomes()),
              0.0);
    }
    return d;
}

Diagnostics validate(const Ensemble& pi) {
    Diagnostics d;
    if (pi.states.empty() || pi.probs.size() != pi.states.size()) {
        d.add("shape", 1.0, 0.0);
        return d;
    }
    double total = 0.0, pmin = 0.0;
    for (double p : pi.probs) {
        total += p;
        pmin = std::min(pmin, p);
    }
    d.add("probs_sum", std::abs(total - 1.0), 1e-9);
    d.add("probs_nonnegative", -pmin, 1e-12);
    double worst = 0.0;
    for (const Matrix& s : pi.states) {
        if (s.rows() != pi.dim()) {
            d.add("state_dims", 1.0, 0.0);
            return d;
        }
        Diagnostics ds = validate(DensityMatrix(s));
        for (const auto& c : ds.checks)
            worst = std::max(worst, c.residual / std::max(c.tolerance, 1e-300));
    }
    d.add("states_valid", worst, 1.0);
    return d;
}

OutcomeDistribution apply_measurement(const DensityMatrix& rho, const POVM& m) {
    if (rho.dim() != m.dim())
        throw std::invalid_argument("apply_measurement: dimension mismatch");
    OutcomeDistribution out;
    out.probs.reserve(m.outcomes());
    for (const Matrix& e : m.elements)
        out.probs.push_back((rho.mat * e).trace().real());
    out.weights = m.weights;
    out.labels = m.labels;
    return out;
}

DensityMatrix posterior_state(const DensityMatrix& rho, const POVM& m, int y) {
    if (y < 0 || y >= m.outcomes())
        throw std::invalid_argument("posterior_state: outcome out of range");
    const double p = (rho.mat * m.elements[y]).trace().real();
    if (p <= 1e-14)
        throw std::invalid_argument("posterior_state: zero-probability outcome");
    Matrix v = matrix_sqrt(m.elements[y]);
    return DensityMatrix((v * rho.mat * v.adjoint()) / p);
}

double complementary_entropy(const DensityMatrix& rho, const POVM& m) {
    OutcomeDistribution dist = apply_measurement(rho, m);
    double h = shannon_entropy(dist.probs);
    for (int y = 0; y < m.outcomes(); ++y) {
        const double p = dist.probs[y];
        if (p <= 1e-14) continue;
        h += p * von_neumann_entropy(posterior_state(rho, m, y).mat);
    }
    return h;
}

std::vector<Matrix> assisted_output_state(const DensityMatrix& rho,
                                          const std::vector<Matrix>& kraus,
                                          const POVM& m) {
    const int n = rho.dim();
    if (kraus.empty())
        throw std::invalid_argument("assisted_output_state: no Kraus operators");
    Matrix kk = Matrix::Zero(n, n);
    for (const Matrix& k : kraus) kk += k.adjoint() * k;
    if ((kk - Matrix::Identity(n, n)).norm() > 1e-8)
        throw std::invalid_argument(
            "assisted_output_state: encoding is not trace-preserving");

    EigenSystem es = eigh(rho.mat);
    Matrix basis = es.vectors;  // Schmidt basis of rho
    Matrix sqrt_rho = matrix_sqrt(rho.mat);

    std::vector<Matrix> out;
    out.reserve(m.outcomes());
    for (const Matrix& my : m.elements) {
        Matrix dual = Matrix::Zero(n, n);  // E_w^*(M_y)
        for (const Matrix& k : kraus) dual += k.adjoint() * my * k;
        Matrix conj_in_basis =
            basis * (basis.adjoint() * dual * basis).conjugate() * basis.adjoint();
        out.push_back(sqrt_rho * conj_in_basis * sqrt_rho);
    }
    return out;
}

}  // namespace qmcap
