#include "qmcap/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmcap {

namespace {

/// Composite Gauss-Legendre on [0,1] with dyadic panels graded toward 0,
/// so endpoint log singularities still converge to near machine precision.
double graded_unit_integral(const std::function<double(double)>& g, int order) {
    const Quadrature base = gauss_quadrature(order, 0.0, 1.0);
    double total = 0.0;
    double hi = 1.0;
    for (int level = 0; level < 48; ++level) {
        const double lo = (level == 47) ? 0.0 : hi * 0.5;
        const double len = hi - lo;
        double panel = 0.0;
        for (std::size_t i = 0; i < base.nodes.size(); ++i)
            panel += base.weights[i] * g(lo + len * base.nodes[i]);
        total += panel * len;
        hi = lo;
    }
    return total;
}

/// sum_{k=2}^m 1/k, summed small-to-large.
double harmonic_sum_from_two(int m) {
    double s = 0.0;
    for (int k = m; k >= 2; --k) s += 1.0 / k;
    return s;
}

Vector coherent_amplitudes(Complex z, int dim) {
    Vector c(dim);
    c[0] = std::exp(-0.5 * std::norm(z));
    for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * z / std::sqrt(double(n));
    return c;
}

/// Renormalize each element by T^{-1/2} . T^{-1/2} with T = sum of elements.
/// Keeps every element PSD (and rank-one elements rank-one) while making the
/// completeness sum exactly the identity.
void repair_completeness(POVM& povm) {
    const int d = povm.dim();
    Matrix total = Matrix::Zero(d, d);
    for (const Matrix& e : povm.elements) total += e;
    Matrix fix = matrix_inv_sqrt(total);
    for (Matrix& e : povm.elements) e = fix * e * fix;
}

}  // namespace

int FockSpec::effective_cutoff() const {
    if (cutoff > 0) return cutoff;
    // Large enough that the thermal occupation tail drops below 1e-13.
    const double needed =
        mean_photons <= 0.0
            ? 0.0
            : -13.0 * std::numbers::ln10 /
                  std::log(mean_photons / (mean_photons + 1.0));
    return std::max(30, static_cast<int>(std::ceil(needed)) + 1);
}

double FockSpec::effective_r_max() const {
    if (r_max > 0.0) return r_max;
    const double np1 = mean_photons + 1.0;
    return std::sqrt(np1 * std::log(1e16 * np1));
}

double sphere_radial_integral(const std::function<double(double)>& f, int m,
                              int n_r) {
    if (m < 1) throw std::invalid_argument("sphere_radial_integral: m >= 1");
    if (m == 1) return f(1.0);  // point mass at full overlap
    const int order = std::max(8, n_r);
    auto integrand = [&](double r) {
        return f(r) * (m - 1) * std::pow(1.0 - r * r, m - 2) * 2.0 * r;
    };
    return graded_unit_integral(integrand, order);
}

double sphere_moment(int m, int k) {
    if (k != 0 && k != 2 && k != 4)
        throw std::invalid_argument("sphere_moment: k must be 0, 2, or 4");
    return sphere_radial_integral([k](double r) { return std::pow(r, k); }, m);
}

SphereCapacity sphere_capacity(int m, int n_r) {
    if (m < 1) throw std::invalid_argument("sphere_capacity: m >= 1");
    SphereCapacity out;
    out.closed = std::log(double(m)) - harmonic_sum_from_two(m);
    out.quadrature = sphere_radial_integral(
        [m](double r) {
            const double t = m * r * r;
            return t > 0.0 ? t * std::log(t) : 0.0;
        },
        m, n_r);
    return out;
}

RadialSubstitutionReport radial_substitution_check(int m, int n_r) {
    if (m < 2) throw std::invalid_argument("radial_substitution_check: m >= 2");
    RadialSubstitutionReport rep;
    // x = 1-u; the x ln x endpoint behavior sits at x = 0 where the graded
    // panels are.
    rep.lhs = graded_unit_integral(
        [m](double x) {
            const double t = m * x;
            const double v = t > 0.0 ? t * std::log(t) : 0.0;
            return v * (m - 1) * std::pow(1.0 - x, m - 2);
        },
        std::max(8, n_r));
    rep.rhs = std::log(double(m)) - harmonic_sum_from_two(m);
    return rep;
}

SphereDiscretization sphere_discretize(const SphereSpec& spec) {
    if (spec.dim < 1 || spec.mc_samples < 1)
        throw std::invalid_argument("sphere_discretize: bad spec");
    const int m = spec.dim;
    const int s = spec.mc_samples;
    HaarSampler sampler(spec.seed);

    SphereDiscretization out;
    out.povm.elements.reserve(s);
    Matrix total = Matrix::Zero(m, m);
    for (int i = 0; i < s; ++i) {
        Vector theta = sampler.pure(m);
        Matrix e = (double(m) / s) * (theta * theta.adjoint());
        total += e;
        out.povm.elements.push_back(std::move(e));
        out.povm.weights.push_back(1.0 / s);
    }
    out.deficit_norm = (total - Matrix::Identity(m, m)).norm();
    if (out.deficit_norm > 0.05)
        throw std::runtime_error(
            "sphere_discretize: completeness deficit too large; raise mc_samples");
    repair_completeness(out.povm);
    return out;
}

DepolarizingReport depolarizing_check(int m, int samples, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("depolarizing_check: m >= 2");
    if (samples < 100)
        throw std::invalid_argument("depolarizing_check: too few samples");

    // Spanning set of pure inputs: basis projectors plus the +1 and +i
    // superpositions of every pair.
    std::vector<Vector> inputs;
    for (int j = 0; j < m; ++j) {
        Vector v = Vector::Zero(m);
        v[j] = 1.0;
        inputs.push_back(v);
    }
    for (int j = 0; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
            Vector v = Vector::Zero(m);
            v[j] = 1.0 / std::numbers::sqrt2;
            v[k] = 1.0 / std::numbers::sqrt2;
            inputs.push_back(v);
            Vector w = Vector::Zero(m);
            w[j] = 1.0 / std::numbers::sqrt2;
            w[k] = Complex(0.0, 1.0 / std::numbers::sqrt2);
            inputs.push_back(w);
        }

    const int ni = static_cast<int>(inputs.size());
    // Per input, per matrix entry: running sums for mean and variance of the
    // real and imaginary parts of m <theta|rho|theta> |theta><theta|.
    std::vector<Eigen::MatrixXd> sum_re(ni), sum_im(ni), sq_re(ni), sq_im(ni);
    for (int i = 0; i < ni; ++i) {
        sum_re[i] = Eigen::MatrixXd::Zero(m, m);
        sum_im[i] = Eigen::MatrixXd::Zero(m, m);
        sq_re[i] = Eigen::MatrixXd::Zero(m, m);
        sq_im[i] = Eigen::MatrixXd::Zero(m, m);
    }

    HaarSampler sampler(seed);
    for (int n = 0; n < samples; ++n) {
        Vector theta = sampler.pure(m);
        Matrix proj = theta * theta.adjoint();
        for (int i = 0; i < ni; ++i) {
            const double q = std::norm(inputs[i].dot(theta));  // |<psi|theta>|^2
            const double scale = m * q;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    const double re = scale * proj(a, b).real();
                    const double im = scale * proj(a, b).imag();
                    sum_re[i](a, b) += re;
                    sum_im[i](a, b) += im;
                    sq_re[i](a, b) += re * re;
                    sq_im[i](a, b) += im * im;
                }
        }
    }

    DepolarizingReport rep;
    rep.samples = samples;
    auto score = [&](double sum, double sq, double target) {
        const double mean = sum / samples;
        const double var = std::max(0.0, sq / samples - mean * mean) * samples /
                           (samples - 1.0);
        const double se = std::sqrt(var / samples);
        const double dev = std::abs(mean - target);
        rep.max_deviation = std::max(rep.max_deviation, dev);
        if (se < 1e-18) {
            if (dev > 1e-12) rep.max_z = std::max(rep.max_z, 1e18);
        } else {
            rep.max_z = std::max(rep.max_z, dev / se);
        }
    };
    for (int i = 0; i < ni; ++i) {
        Matrix rho = inputs[i] * inputs[i].adjoint();
        Matrix target = (rho + Matrix::Identity(m, m)) / double(m + 1);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                score(sum_re[i](a, b), sq_re[i](a, b), target(a, b).real());
                score(sum_im[i](a, b), sq_im[i](a, b), target(a, b).imag());
            }
    }
    rep.pass = rep.max_z <= 5.0;
    return rep;
}

CovariantPOVM weyl_heisenberg_povm(int m, const Vector& fiducial) {
    if (m < 2) throw std::invalid_argument("weyl_heisenberg_povm: m >= 2");
    if (fiducial.size() != m ||
        std::abs(fiducial.norm() - 1.0) > 1e-9)
        throw std::invalid_argument(
            "weyl_heisenberg_povm: fiducial must be a unit vector of dimension m");

    Matrix shift = Matrix::Zero(m, m);   // X|j> = |j+1 mod m>
    for (int j = 0; j < m; ++j) shift((j + 1) % m, j) = 1.0;
    Matrix clock = Matrix::Zero(m, m);   // Z|j> = w^j |j>
    const double step = 2.0 * std::numbers::pi / m;
    for (int j = 0; j < m; ++j)
        clock(j, j) = Complex(std::cos(step * j), std::sin(step * j));

    CovariantPOVM out;
    out.spec.dim = m;
    out.spec.fiducial = fiducial;
    Matrix total = Matrix::Zero(m, m);
    Matrix xa = Matrix::Identity(m, m);
    for (int a = 0; a < m; ++a) {
        Matrix v = xa;
        for (int b = 0; b < m; ++b) {
            out.spec.group.push_back(v);
            Vector psi = v * fiducial;
            Matrix e = (psi * psi.adjoint()) / double(m);  // m/|G| = 1/m
            total += e;
            out.povm.elements.push_back(std::move(e));
            v = v * clock;
        }
        xa = shift * xa;
    }
    if ((total - Matrix::Identity(m, m)).norm() > 1e-10)
        throw std::runtime_error(
            "weyl_heisenberg_povm: completeness failed; bad group construction");
    return out;
}

Vector sic_qubit_fiducial() {
    const double nz = 1.0 / std::sqrt(3.0);
    const double c = std::sqrt(0.5 * (1.0 + nz));
    const double s = std::sqrt(0.5 * (1.0 - nz));
    Vector psi(2);
    psi[0] = c;
    psi[1] = Complex(std::cos(std::numbers::pi / 4.0),
                     std::sin(std::numbers::pi / 4.0)) *
             s;
    return psi;
}

DensityMatrix thermal_state(double mean_photons, int cutoff) {
    if (mean_photons < 0.0)
        throw std::invalid_argument("thermal_state: N >= 0");
    if (cutoff < 1) throw std::invalid_argument("thermal_state: cutoff >= 1");
    const int dim = cutoff + 1;
    Matrix rho = Matrix::Zero(dim, dim);
    if (mean_photons == 0.0) {
        rho(0, 0) = 1.0;
        return DensityMatrix(rho);
    }
    const double ratio = mean_photons / (mean_photons + 1.0);
    const double tail = std::pow(ratio, cutoff + 1);
    if (tail >= 1e-12)
        throw std::invalid_argument("thermal_state: cutoff too small for tail");
    double p = 1.0 / (mean_photons + 1.0);
    double total = 0.0;
    for (int n = 0; n < dim; ++n) {
        rho(n, n) = p;
        total += p;
        p *= ratio;
    }
    rho /= total;
    return DensityMatrix(rho);
}

Vector coherent_state(Complex z, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("coherent_state: cutoff >= 1");
    Vector c = coherent_amplitudes(z, cutoff + 1);
    const double miss = 1.0 - c.squaredNorm();
    if (miss >= 1e-12)
        throw std::invalid_argument("coherent_state: truncation tail too large");
    return c;
}

double husimi_entropy(const DensityMatrix& rho, const FockSpec& spec) {
    const int dim = rho.dim();
    const double rmax = spec.effective_r_max();
    const double tmax = rmax * rmax;
    const Quadrature radial = gauss_quadrature(spec.radial_nodes, 0.0, tmax);

    const bool phase_invariant =
        (rho.mat - Matrix(rho.mat.diagonal().asDiagonal())).norm() < 1e-13;
    const int n_ang = phase_invariant ? 1 : spec.angular_nodes;

    auto husimi = [&](Complex z) {
        Vector c = coherent_amplitudes(z, dim);
        return std::max(0.0, (c.adjoint() * rho.mat * c)(0).real());
    };

    // Coverage: the grid must reach out to where the density is negligible.
    for (int j = 0; j < std::max(n_ang, 8); ++j) {
        const double phi = 2.0 * std::numbers::pi * j / std::max(n_ang, 8);
        Complex edge = rmax * Complex(std::cos(phi), std::sin(phi));
        if (husimi(edge) > 1e-12)
            throw std::invalid_argument(
                "husimi_entropy: grid does not cover the state's density");
    }

    // d^2z/pi = dt dphi / (2 pi) with t = |z|^2.
    double h = 0.0;
    for (int j = 0; j < n_ang; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n_ang;
        const Complex dir(std::cos(phi), std::sin(phi));
        double slice = 0.0;
        for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
            const double q = husimi(std::sqrt(radial.nodes[i]) * dir);
            if (q > 0.0) slice -= radial.weights[i] * q * std::log(q);
        }
        h += slice / n_ang;
    }
    return h;
}

HeterodyneCapacities heterodyne_capacities(double mean_photons) {
    if (mean_photons < 0.0)
        throw std::invalid_argument("heterodyne_capacities: N >= 0");
    HeterodyneCapacities out;
    if (mean_photons == 0.0) return out;  // limit convention
    const double n = mean_photons;
    out.c = std::log(n + 1.0);
    out.g = (n + 1.0) * std::log(n + 1.0) - n * std::log(n);
    out.cea = out.g;
    return out;
}

POVM heterodyne_discretize(const FockSpec& spec) {
    const int dim = spec.effective_cutoff() + 1;
    const double rmax = spec.effective_r_max();
    const Quadrature radial = gauss_quadrature(spec.radial_nodes, 0.0, rmax * rmax);
    POVM povm;
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
        for (int j = 0; j < spec.angular_nodes; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / spec.angular_nodes;
            Complex z = std::sqrt(radial.nodes[i]) *
                        Complex(std::cos(phi), std::sin(phi));
            Vector c = coherent_amplitudes(z, dim);
            const double w = radial.weights[i] / spec.angular_nodes;
            povm.elements.push_back(w * (c * c.adjoint()));
            povm.weights.push_back(w);
        }
    }
    repair_completeness(povm);
    return povm;
}

Ensemble scrooge_ensemble(const DensityMatrix& rho, const SphereSpec& spec) {
    if (rho.dim() != spec.dim)
        throw std::invalid_argument("scrooge_ensemble: dimension mismatch");
    return dual_ensemble(rho, sphere_discretize(spec).povm);
}

}  // namespace qmcap
