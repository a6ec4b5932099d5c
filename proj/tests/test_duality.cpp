#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmcap/duality.hpp"
#include "qmcap/models.hpp"

using namespace qmcap;

namespace {

DensityMatrix random_full_rank_state(HaarSampler& s, int d) {
    Matrix rho = Matrix::Zero(d, d);
    for (int k = 0; k < d + 1; ++k) {
        Vector v = s.pure(d);
        rho += v * v.adjoint();
    }
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

POVM random_povm(HaarSampler& s, int d, int outcomes) {
    std::vector<Matrix> raw;
    Matrix total = Matrix::Zero(d, d);
    for (int y = 0; y < outcomes; ++y) {
        Matrix a(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i, j) = s.gaussian();
        raw.push_back(a * a.adjoint());
        total += raw.back();
    }
    Matrix t = matrix_inv_sqrt(total);
    POVM m;
    for (const Matrix& e : raw) m.elements.push_back(t * e * t);
    return m;
}

Ensemble random_pure_ensemble(HaarSampler& s, int d, int n) {
    Ensemble pi;
    std::vector<double> p(n);
    double total = 0.0;
    for (double& v : p) {
        v = 0.1 + std::norm(s.gaussian());
        total += v;
    }
    for (int x = 0; x < n; ++x) {
        pi.probs.push_back(p[x] / total);
        Vector v = s.pure(d);
        pi.states.push_back(v * v.adjoint());
    }
    return pi;
}

}  // namespace

TEST_CASE("dual ensemble is a valid ensemble averaging to rho") {
    HaarSampler s(1);
    for (int d : {2, 3}) {
        DensityMatrix rho = random_full_rank_state(s, d);
        POVM m = random_povm(s, d, d + 2);
        Ensemble dual = dual_ensemble(rho, m);
        CHECK(validate(dual).pass);
        CHECK((dual.average().mat - rho.mat).norm() < 1e-10);
    }
}

TEST_CASE("dual observable is a valid POVM averaging back") {
    HaarSampler s(2);
    Ensemble pi = random_pure_ensemble(s, 3, 5);
    DualObservable dual = dual_observable(pi);
    CHECK(dual.completeness_residual < 1e-9);
    CHECK((dual.average.mat - pi.average().mat).norm() < 1e-12);
    CHECK(validate(dual.observable).pass);
}

TEST_CASE("roundtrip state -> ensemble -> observable recovers the POVM") {
    HaarSampler s(3);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + trial % 2;
        DensityMatrix rho = random_full_rank_state(s, d);
        POVM m = random_povm(s, d, d + 1);
        DualObservable back = dual_observable(dual_ensemble(rho, m));
        REQUIRE(back.observable.outcomes() == m.outcomes());
        double worst = 0.0;
        for (int y = 0; y < m.outcomes(); ++y)
            worst = std::max(worst,
                             (back.observable.elements[y] - m.elements[y]).norm());
        CHECK(worst < 1e-9);
        CHECK((back.average.mat - rho.mat).norm() < 1e-10);
    }
}

TEST_CASE("Shannon information is invariant under the duality transform") {
    HaarSampler s(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 2;
        Ensemble pi = random_pure_ensemble(s, d, d + 2);
        POVM m = random_povm(s, d, d + 1);
        OptimizerOptions opts;
        opts.seed = trial;
        opts.restarts = 1;
        opts.max_iters = 10;  // keep the diagnostic accessible bound cheap
        InfoDualityReport rep = info_duality_check(pi, m, opts);
        CHECK(rep.info_gap < 1e-10);
        CHECK(rep.chi_mutual_gap < 1e-10);
    }
}

TEST_CASE("dual outcome probabilities share the primal spectrum") {
    // p'_x = p_x by construction: the dual ensemble's prior equals the
    // outcome distribution of M at rho.
    HaarSampler s(5);
    DensityMatrix rho = random_full_rank_state(s, 3);
    POVM m = random_povm(s, 3, 5);
    Ensemble dual = dual_ensemble(rho, m);
    OutcomeDistribution p = apply_measurement(rho, m);
    REQUIRE(dual.size() == static_cast<int>(p.probs.size()));
    for (int y = 0; y < dual.size(); ++y)
        CHECK(dual.probs[y] == doctest::Approx(p.probs[y]).epsilon(1e-12));
}

TEST_CASE("zero-probability outcomes are dropped from the dual ensemble") {
    DensityMatrix rho(Matrix::Identity(2, 2) * 0.5);
    POVM m;
    Matrix e0 = Matrix::Identity(2, 2);
    m.elements.push_back(e0);
    m.elements.push_back(Matrix::Zero(2, 2));
    Ensemble dual = dual_ensemble(rho, m);
    CHECK(dual.size() == 1);
    CHECK(dual.probs[0] == doctest::Approx(1.0));
}

TEST_CASE("equality condition holds for commuting instances only") {
    DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    POVM basis;
    for (int j = 0; j < 2; ++j) {
        Matrix e = Matrix::Zero(2, 2);
        e(j, j) = 1.0;
        basis.elements.push_back(e);
    }
    CHECK(equality_condition(mixed, basis).holds);

    POVM sic = weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm;
    CHECK_FALSE(equality_condition(mixed, sic).holds);
}

TEST_CASE("weights forward through the duality for discretized observables") {
    SphereSpec spec;
    spec.dim = 2;
    spec.mc_samples = 500;
    spec.seed = 77;
    POVM sphere = sphere_discretize(spec).povm;
    REQUIRE(sphere.has_weights());
    Ensemble dual = dual_ensemble(DensityMatrix::maximally_mixed(2), sphere);
    CHECK(dual.has_weights());
    CHECK(dual.weights.size() == dual.probs.size());
}
