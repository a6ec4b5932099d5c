#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmcap/capacity.hpp"
#include "qmcap/models.hpp"

using namespace qmcap;

namespace {

constexpr double kLn2 = std::numbers::ln2;

POVM qubit_basis() {
    POVM m;
    for (int j = 0; j < 2; ++j) {
        Matrix e = Matrix::Zero(2, 2);
        e(j, j) = 1.0;
        m.elements.push_back(e);
    }
    return m;
}

/// Brute-force classical mutual information for a discrete channel, used as
/// an oracle against shannon_info on commuting instances.
double classical_mi(const std::vector<double>& p,
                    const std::vector<std::vector<double>>& w) {
    std::vector<double> out(w[0].size(), 0.0);
    for (std::size_t x = 0; x < p.size(); ++x)
        for (std::size_t y = 0; y < out.size(); ++y) out[y] += p[x] * w[x][y];
    double mi = shannon_entropy(out);
    for (std::size_t x = 0; x < p.size(); ++x)
        mi -= p[x] * shannon_entropy(w[x]);
    return mi;
}

}  // namespace

TEST_CASE("shannon_info matches the classical formula on diagonal inputs") {
    POVM m;
    std::vector<std::vector<double>> rows{{0.9, 0.1}, {0.3, 0.7}};
    for (int y = 0; y < 2; ++y) {
        Matrix e = Matrix::Zero(2, 2);
        for (int x = 0; x < 2; ++x) e(x, x) = rows[x][y];
        m.elements.push_back(e);
    }
    Ensemble pi;
    pi.probs = {0.4, 0.6};
    for (int x = 0; x < 2; ++x) {
        Matrix s = Matrix::Zero(2, 2);
        s(x, x) = 1.0;
        pi.states.push_back(s);
    }
    CHECK(shannon_info(pi, m) ==
          doctest::Approx(classical_mi(pi.probs, rows)).epsilon(1e-12));
}

TEST_CASE("holevo chi of pure orthogonal ensembles is the prior entropy") {
    Ensemble pi;
    pi.probs = {0.25, 0.75};
    for (int x = 0; x < 2; ++x) {
        Matrix s = Matrix::Zero(2, 2);
        s(x, x) = 1.0;
        pi.states.push_back(s);
    }
    CHECK(holevo_chi(pi) == doctest::Approx(shannon_entropy(pi.probs)));
}

TEST_CASE("basis measurement: C = Cea = chi at I/2 = ln 2") {
    OptimizerOptions opts;
    opts.restarts = 4;
    opts.seed = 5;
    POVM basis = qubit_basis();
    CHECK(capacity_C(basis, {}, opts).value == doctest::Approx(kLn2).epsilon(1e-7));
    CHECK(capacity_Cea(basis, {}, opts).value ==
          doctest::Approx(kLn2).epsilon(1e-7));
    CapacityResult chi =
        chi_measurement(DensityMatrix::maximally_mixed(2), basis, opts);
    CHECK(chi.value == doctest::Approx(kLn2).epsilon(1e-6));
}

TEST_CASE("SIC qubit: Cea = ln 2 with the maximally mixed achiever") {
    OptimizerOptions opts;
    opts.restarts = 4;
    opts.seed = 7;
    POVM sic = weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm;
    CapacityResult cea = capacity_Cea(sic, {}, opts);
    CHECK(cea.value == doctest::Approx(kLn2).epsilon(1e-7));
    CHECK((cea.achiever_state.mat - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-4);
    // Strictly informationally incomplete ordering: C < chi-at-best <= Cea.
    CapacityResult c = capacity_C(sic, {}, opts);
    CHECK(c.value < cea.value - 1e-3);
}

TEST_CASE("C never exceeds Cea and both are nonnegative") {
    OptimizerOptions opts;
    opts.restarts = 2;
    opts.max_iters = 120;
    HaarSampler s(11);
    for (int trial = 0; trial < 3; ++trial) {
        opts.seed = 100 + trial;
        // Random rank-one POVM with d+2 outcomes.
        const int d = 2 + trial % 2;
        std::vector<Vector> vs;
        Matrix total = Matrix::Zero(d, d);
        for (int y = 0; y < d + 2; ++y) {
            vs.push_back(s.pure(d));
            total += vs.back() * vs.back().adjoint();
        }
        Matrix t = matrix_inv_sqrt(total);
        POVM m;
        for (const Vector& v : vs) {
            Vector w = t * v;
            m.elements.push_back(w * w.adjoint());
        }
        REQUIRE(validate(m).pass);
        const double c = capacity_C(m, {}, opts).value;
        const double cea = capacity_Cea(m, {}, opts).value;
        CHECK(c >= -1e-9);
        CHECK(c <= cea + 1e-6);
        CHECK(cea <= std::log(double(d)) + 1e-9);
    }
}

TEST_CASE("chi at rho lies between mutual information and Cea pieces") {
    OptimizerOptions opts;
    opts.restarts = 4;
    opts.seed = 3;
    POVM sic = weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm;
    HaarSampler s(13);
    Vector v = s.pure(2);
    Matrix rho_m = 0.7 * (v * v.adjoint());
    rho_m += 0.3 * Matrix::Identity(2, 2) / 2.0;
    DensityMatrix rho(rho_m);
    CapacityResult chi = chi_measurement(rho, sic, opts);
    // chi(rho) <= I(rho; M): the entanglement-assisted information at rho
    // dominates the unassisted one (this ordering is why Cea >= C).
    CHECK(chi.value <= mutual_info(rho, sic) + 1e-6);
    // chi(rho) <= H(P_rho), and it beats the trivial one-state decomposition.
    CHECK(chi.value <= apply_measurement(rho, sic).entropy() + 1e-9);
    CHECK(chi.value >= -1e-12);
    // chi at least matches the information of the eigendecomposition of rho.
    EigenSystem es = eigh(rho.mat);
    Ensemble eig;
    for (int k = 0; k < 2; ++k) {
        eig.probs.push_back(es.values[k]);
        eig.states.push_back(es.vectors.col(k) * es.vectors.col(k).adjoint());
    }
    CHECK(chi.value >= shannon_info(eig, sic) - 1e-6);
}

TEST_CASE("input constraint binds the capacity") {
    OptimizerOptions opts;
    opts.restarts = 2;
    opts.max_iters = 100;
    opts.seed = 9;
    POVM basis = qubit_basis();
    // Energy observable E = diag(0, 1), bound forces weight on |0>.
    ConstraintSpec cons;
    cons.observable = Matrix::Zero(2, 2);
    cons.observable(1, 1) = 1.0;
    cons.bound = 0.1;
    CapacityResult c = capacity_C(basis, cons, opts);
    // Capped by the binary entropy h(0.1) < ln 2.
    const double h01 = -(0.1 * std::log(0.1) + 0.9 * std::log(0.9));
    CHECK(c.value <= h01 + 1e-4);
    CHECK(c.value >= h01 - 1e-3);
    CapacityResult cea = capacity_Cea(basis, cons, opts);
    CHECK(cea.value <= h01 + 1e-4);
    // The unconstrained value is strictly larger.
    CHECK(capacity_C(basis, {}, opts).value > c.value + 0.1);
}

TEST_CASE("accessible information of orthogonal pure states is extracted") {
    Ensemble pi;
    pi.probs = {0.5, 0.5};
    for (int x = 0; x < 2; ++x) {
        Matrix s = Matrix::Zero(2, 2);
        s(x, x) = 1.0;
        pi.states.push_back(s);
    }
    OptimizerOptions opts;
    opts.restarts = 2;
    opts.seed = 21;
    CapacityResult acc = accessible_info(pi, opts);
    CHECK(acc.lower_bound_flag);  // seesaw only certifies a lower bound
    CHECK(acc.value == doctest::Approx(kLn2).epsilon(1e-6));
}

TEST_CASE("accessible information never exceeds chi") {
    HaarSampler s(17);
    OptimizerOptions opts;
    opts.restarts = 2;
    opts.max_iters = 120;
    for (int trial = 0; trial < 3; ++trial) {
        opts.seed = 40 + trial;
        Ensemble pi;
        for (int x = 0; x < 4; ++x) {
            Vector v = s.pure(2);
            pi.probs.push_back(0.25);
            pi.states.push_back(v * v.adjoint());
        }
        CapacityResult acc = accessible_info(pi, opts);
        CHECK(acc.value <= holevo_chi(pi) + 1e-8);
        CHECK(acc.value >= -1e-12);
    }
}

TEST_CASE("accessible information guards against large dimensions") {
    Ensemble pi;
    const int d = 6;
    for (int x = 0; x < d; ++x) {
        Matrix s = Matrix::Zero(d, d);
        s(x, x) = 1.0;
        pi.probs.push_back(1.0 / d);
        pi.states.push_back(s);
    }
    OptimizerOptions opts;  // max_dim defaults to 4
    CHECK_THROWS_AS(accessible_info(pi, opts), std::invalid_argument);
}

TEST_CASE("covariant shortcut agrees with the generic optimizer") {
    OptimizerOptions opts;
    opts.restarts = 2;
    opts.max_iters = 200;
    opts.seed = 2;
    Vector fid(3);
    fid << Complex(0.7, 0.1), Complex(0.2, -0.4), Complex(0.5, 0.2);
    fid.normalize();
    POVM wh = weyl_heisenberg_povm(3, fid).povm;
    const double c_cov = covariant_capacity(wh, opts).value;
    const double c_gen = capacity_C(wh, {}, opts).value;
    CHECK(c_gen == doctest::Approx(c_cov).epsilon(1e-4));
}
