#pragma once

#include <functional>

#include "qmcap/duality.hpp"
#include "qmcap/quantum.hpp"

namespace qmcap {

/// Monte Carlo discretization of the uniform sphere observable.
struct SphereSpec {
    int dim = 2;
    int radial_order = 32;   // quadrature nodes per radial panel
    int mc_samples = 10000;
    std::uint64_t seed = 0;
};

/// Truncated Fock-space setup for the heterodyne observable.
struct FockSpec {
    double mean_photons = 1.0;  // N
    int cutoff = 0;             // 0 -> max(30, ceil(20 (N+1)))
    int radial_nodes = 200;
    int angular_nodes = 64;
    double r_max = 0.0;         // 0 -> thermal density coverage down to 1e-16

    int effective_cutoff() const;
    double effective_r_max() const;
};

/// Group-covariant POVM description.
struct CovariantSpec {
    int dim = 0;
    std::vector<Matrix> group;  // unitaries V_g
    Vector fiducial;
};

/// Integral of F over the overlap radius r = |<theta|theta'>| against the
/// sphere measure: -int_0^1 F(r) d(1-r^2)^(m-1). m = 1 is the degenerate
/// point mass at r = 1.
double sphere_radial_integral(const std::function<double(double)>& f, int m,
                              int n_r = 32);

/// int |<theta|theta'>|^k nu(dtheta) for k in {0, 2, 4}.
double sphere_moment(int m, int k);

struct SphereCapacity {
    double closed = 0.0;      // ln m - sum_{k=2}^m 1/k
    double quadrature = 0.0;  // radial quadrature of m r^2 ln(m r^2)
};
SphereCapacity sphere_capacity(int m, int n_r = 32);

struct RadialSubstitutionReport {
    double lhs = 0.0;  // quadrature of int_0^1 m(1-u) ln(m(1-u)) du^{m-1}
    double rhs = 0.0;  // ln m - sum_{k=2}^m 1/k
};
RadialSubstitutionReport radial_substitution_check(int m, int n_r = 32);

struct SphereDiscretization {
    POVM povm;
    double deficit_norm = 0.0;  // ||sum M_i - I||_F before correction
};
/// Monte Carlo cells (m/S)|theta_i><theta_i| with weights 1/S; the
/// completeness deficit is repaired exactly (see module notes).
SphereDiscretization sphere_discretize(const SphereSpec& spec);

struct DepolarizingReport {
    double max_deviation = 0.0;  // worst |estimate - target| entry
    double max_z = 0.0;          // worst deviation in MC standard errors
    int samples = 0;
    bool pass = false;           // max_z <= 5
};
/// Monte Carlo check of m int |theta><theta|rho|theta><theta| nu(dtheta)
/// == rho/(m+1) + I/(m+1) on a spanning set of pure inputs.
DepolarizingReport depolarizing_check(int m, int samples, std::uint64_t seed);

struct CovariantPOVM {
    CovariantSpec spec;
    POVM povm;
};
/// Clock-and-shift (Weyl-Heisenberg) covariant POVM in dimension m,
/// |G| = m^2, elements (1/m) V_g |psi0><psi0| V_g^dag.
CovariantPOVM weyl_heisenberg_povm(int m, const Vector& fiducial);

/// Qubit SIC fiducial (Bloch vector (1,1,1)/sqrt(3)).
Vector sic_qubit_fiducial();

/// Thermal (Gaussian) state with mean photon number N, truncated Fock basis.
DensityMatrix thermal_state(double mean_photons, int cutoff);

/// Coherent state |z> in the truncated Fock basis.
Vector coherent_state(Complex z, int cutoff);

/// Wehrl entropy -int <z|rho|z> ln <z|rho|z> d^2z/pi on a polar grid.
/// Angular integration collapses for phase-invariant states.
double husimi_entropy(const DensityMatrix& rho, const FockSpec& spec);

struct HeterodyneCapacities {
    double c = 0.0;    // ln(N+1)
    double cea = 0.0;  // g(N) = (N+1) ln(N+1) - N ln N
    double g = 0.0;    // same as cea; the thermal-state entropy
};
HeterodyneCapacities heterodyne_capacities(double mean_photons);

/// Coherent-state POVM discretized on the truncated Fock space, completeness
/// repaired exactly (for cross-checks of the heterodyne identities).
POVM heterodyne_discretize(const FockSpec& spec);

/// Scrooge ensemble: the dual of (rho, discretized sphere observable).
Ensemble scrooge_ensemble(const DensityMatrix& rho, const SphereSpec& spec);

}  // namespace qmcap
