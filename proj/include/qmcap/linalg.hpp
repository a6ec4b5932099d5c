#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace qmcap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Spectral decomposition of a Hermitian matrix.
/// eigenvalues ascending, eigenvectors as unitary columns.
struct EigenSystem {
    RealVector values;
    Matrix vectors;
};

/// Relative eigenvalue cutoff below which spectral functions treat an
/// eigenvalue as zero (pseudo-inverse convention).
inline constexpr double kSupportCutoff = 1e-12;

/// Hermitian eigendecomposition. Input is symmetrized internally; throws
/// std::invalid_argument for non-square, non-finite, or grossly
/// non-Hermitian input.
EigenSystem eigh(const Matrix& h);

/// f applied on the spectrum of Hermitian h. Eigenvalues below
/// support_cutoff * max|eigenvalue| are mapped to zero without calling f.
Matrix matrix_function(const Matrix& h, const std::function<double(double)>& f,
                       double support_cutoff = kSupportCutoff);

Matrix matrix_sqrt(const Matrix& h);
/// Inverse square root on the support of h (pseudo-inverse off-support).
Matrix matrix_inv_sqrt(const Matrix& h);

/// Shannon entropy in nats; p is renormalized, 0 log 0 := 0.
double shannon_entropy(const std::vector<double>& p);

/// Von Neumann entropy in nats of a density matrix (entropy of its spectrum).
double von_neumann_entropy(const Matrix& rho);

/// Differential entropy -sum p_i ln(p_i / w_i) against reference weights w.
/// May be negative. Throws if weights are missing or non-positive.
double differential_entropy(const std::vector<double>& p,
                            const std::vector<double>& w);

struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 1.0;
};

/// Gauss-Legendre rule on [a, b], exact for polynomials of degree <= 2n-1.
Quadrature gauss_quadrature(int n, double a, double b);

/// Stream of Haar-random pure states. mt19937_64 + explicit Box-Muller, so
/// the sequence is bit-reproducible per seed across platforms.
class HaarSampler {
  public:
    explicit HaarSampler(std::uint64_t seed) : gen_(seed) {}

    /// One standard complex Gaussian.
    Complex gaussian();

    /// Haar-random unit vector of the given dimension.
    Vector pure(int dim);

  private:
    std::mt19937_64 gen_;
};

/// One-shot Haar-random pure state; equals HaarSampler(seed).pure(dim).
Vector haar_random_pure(int dim, std::uint64_t seed);

}  // namespace qmcap
