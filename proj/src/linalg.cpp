#include "qmcap/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmcap {

EigenSystem eigh(const Matrix& h) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("eigh: matrix must be square");
    if (!h.allFinite())
        throw std::invalid_argument("eigh: matrix has non-finite entries");
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-9 * scale)
        throw std::invalid_argument("eigh: matrix is not Hermitian");
    Matrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigh: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_function(const Matrix& h, const std::function<double(double)>& f,
                       double support_cutoff) {
    EigenSystem es = eigh(h);
    const double top = es.values.cwiseAbs().maxCoeff();
    const double cut = support_cutoff * top;
    RealVector mapped(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        if (es.values[i] <= cut) {
            mapped[i] = 0.0;
        } else {
            mapped[i] = f(es.values[i]);
            if (!std::isfinite(mapped[i]))
                throw std::invalid_argument(
                    "matrix_function: f undefined on a retained eigenvalue");
        }
    }
    return es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
}

Matrix matrix_sqrt(const Matrix& h) {
    return matrix_function(h, [](double x) { return std::sqrt(x); });
}

Matrix matrix_inv_sqrt(const Matrix& h) {
    return matrix_function(h, [](double x) { return 1.0 / std::sqrt(x); });
}

double shannon_entropy(const std::vector<double>& p) {
    double total = 0.0;
    for (double x : p) {
        if (x < -1e-12)
            throw std::invalid_argument("shannon_entropy: negative probability");
        total += x;
    }
    if (total <= 0.0)
        throw std::invalid_argument("shannon_entropy: zero total weight");
    double h = 0.0;
    for (double x : p) {
        const double q = x / total;
        if (q > 0.0) h -= q * std::log(q);
    }
    return h;
}

double von_neumann_entropy(const Matrix& rho) {
    EigenSystem es = eigh(rho);
    double h = 0.0;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        const double q = es.values[i];
        if (q > 0.0) h -= q * std::log(q);
    }
    return h;
}

double differential_entropy(const std::vector<double>& p,
                            const std::vector<double>& w) {
    if (w.empty() || w.size() != p.size())
        throw std::invalid_argument(
            "differential_entropy: reference weights required");
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (w[i] <= 0.0)
            throw std::invalid_argument(
                "differential_entropy: weights must be positive");
        if (p[i] > 0.0) h -= p[i] * std::log(p[i] / w[i]);
    }
    return h;
}

Quadrature gauss_quadrature(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_quadrature: n must be >= 1");
    if (!(a < b)) throw std::invalid_argument("gauss_quadrature: need a < b");
    // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
    // from the first eigenvector components.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double beta = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    Quadrature q;
    q.a = a;
    q.b = b;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = mid + half * solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        q.weights[i] = 2.0 * v0 * v0 * half;
    }
    return q;
}

Complex HaarSampler::gaussian() {
    // Box-Muller over explicit mt19937_64 draws; std::normal_distribution is
    // implementation-defined and would break cross-platform reproducibility.
    const double denom = static_cast<double>(gen_.max()) + 1.0;
    double u1 = (static_cast<double>(gen_()) + 0.5) / denom;
    double u2 = (static_cast<double>(gen_()) + 0.5) / denom;
    const double r = std::sqrt(-std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

Vector HaarSampler::pure(int dim) {
    if (dim < 1) throw std::invalid_argument("HaarSampler: dim must be >= 1");
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = gaussian();
    const double norm = v.norm();
    if (norm == 0.0) return pure(dim);  // probability-zero retry
    return v / norm;
}

Vector haar_random_pure(int dim, std::uint64_t seed) {
    return HaarSampler(seed).pure(dim);
}

}  // namespace qmcap
