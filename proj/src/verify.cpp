#include "qmcap/verify.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qmcap/capacity.hpp"
#include "qmcap/duality.hpp"
#include "qmcap/models.hpp"
#include "qmcap/quantum.hpp"

namespace qmcap::verify {

namespace {

constexpr double kLn2 = std::numbers::ln2;

Matrix random_density(HaarSampler& sampler, int dim, int mixture) {
    Matrix rho = Matrix::Zero(dim, dim);
    double total = 0.0;
    std::vector<double> w(mixture);
    for (int i = 0; i < mixture; ++i) {
        w[i] = std::norm(sampler.gaussian()) + 0.05;
        total += w[i];
    }
    for (int i = 0; i < mixture; ++i) {
        Vector psi = sampler.pure(dim);
        rho += (w[i] / total) * (psi * psi.adjoint());
    }
    return rho;
}

POVM random_povm(HaarSampler& sampler, int dim, int outcomes) {
    POVM povm;
    Matrix sum = Matrix::Zero(dim, dim);
    for (int y = 0; y < outcomes; ++y) {
        Matrix g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g(i, j) = sampler.gaussian();
        Matrix e = g * g.adjoint();
        sum += e;
        povm.elements.push_back(std::move(e));
    }
    Matrix fix = matrix_inv_sqrt(sum);
    for (Matrix& e : povm.elements) e = fix * e * fix;
    return povm;
}

Ensemble random_pure_ensemble(HaarSampler& sampler, int dim, int count) {
    Ensemble pi;
    double total = 0.0;
    for (int x = 0; x < count; ++x) {
        const double p = std::norm(sampler.gaussian()) + 0.05;
        pi.probs.push_back(p);
        total += p;
        Vector psi = sampler.pure(dim);
        pi.states.push_back(psi * psi.adjoint());
    }
    for (double& p : pi.probs) p /= total;
    return pi;
}

/// Independent route for the complementary-channel entropy: spectrum of the
/// explicit block matrix sum_y |y><y| (x) V_y rho V_y^dag.
double block_matrix_entropy(const DensityMatrix& rho, const POVM& m) {
    const int d = rho.dim();
    const int n = m.outcomes();
    Matrix block = Matrix::Zero(n * d, n * d);
    for (int y = 0; y < n; ++y) {
        Matrix v = matrix_sqrt(m.elements[y]);
        block.block(y * d, y * d, d, d) = v * rho.mat * v.adjoint();
    }
    return von_neumann_entropy(block);
}

void criterion_subentropy(Report& rep, std::uint64_t) {
    double worst = 0.0;
    for (int m = 2; m <= 16; ++m) {
        SphereCapacity cap = sphere_capacity(m);
        worst = std::max(worst, std::abs(cap.closed - cap.quadrature));
    }
    rep.add("closed_vs_quadrature_m2_16", worst, 1e-9);
    const double euler_gamma = 0.5772156649015328606;
    SphereCapacity big = sphere_capacity(1000000);
    rep.add("limit_m_1e6_vs_1_minus_gamma",
            std::abs(big.closed - (1.0 - euler_gamma)), 1e-5);
}

void criterion_radial_substitution(Report& rep, std::uint64_t) {
    double worst = 0.0;
    for (int m = 2; m <= 10; ++m) {
        RadialSubstitutionReport a = radial_substitution_check(m);
        worst = std::max(worst, std::abs(a.lhs - a.rhs));
    }
    rep.add("radial_substitution_lhs_vs_rhs_m2_10", worst, 1e-10);
}

void criterion_moments(Report& rep, std::uint64_t seed) {
    double worst2 = 0.0, worst4 = 0.0;
    for (int m = 2; m <= 8; ++m) {
        worst2 = std::max(worst2, std::abs(sphere_moment(m, 2) - 1.0 / m));
        worst4 = std::max(worst4,
                          std::abs(sphere_moment(m, 4) - 2.0 / (m * (m + 1.0))));
    }
    rep.add("quadrature_moment_k2", worst2, 1e-12);
    rep.add("quadrature_moment_k4", worst4, 1e-12);

    const int samples = 1000000;
    double worst_z = 0.0;
    for (int m = 2; m <= 4; ++m) {
        HaarSampler sampler(seed + m);
        double s2 = 0.0, s4 = 0.0, q2 = 0.0, q4 = 0.0;
        for (int i = 0; i < samples; ++i) {
            // |<theta|e_1>|^2; unitary invariance makes e_1 generic.
            const double v = std::norm(sampler.pure(m)[0]);
            s2 += v;
            s4 += v * v;
            q2 += v * v;
            q4 += v * v * v * v;
        }
        auto zscore = [&](double sum, double sumsq, double target) {
            const double mean = sum / samples;
            const double var =
                std::max(0.0, sumsq / samples - mean * mean) * samples /
                (samples - 1.0);
            return std::abs(mean - target) / std::sqrt(var / samples);
        };
        worst_z = std::max(worst_z, zscore(s2, q2, 1.0 / m));
        worst_z = std::max(worst_z, zscore(s4, q4, 2.0 / (m * (m + 1.0))));
    }
    rep.add("haar_mc_moments_zscore", worst_z, 5.0);
}

void criterion_depolarizing(Report& rep, std::uint64_t seed) {
    for (int m : {2, 3}) {
        DepolarizingReport d = depolarizing_check(m, 1000000, seed + m);
        rep.add("depolarizing_zscore_m" + std::to_string(m), d.max_z, 5.0);
    }
}

void criterion_cea_rank_one(Report& rep, std::uint64_t seed) {
    OptimizerOptions opts;
    opts.seed = seed;
    opts.restarts = 6;

    POVM sic = weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm;
    CapacityResult r2 = capacity_Cea(sic, {}, opts);
    rep.add("cea_sic_qubit_vs_ln2", std::abs(r2.value - kLn2), 1e-6);
    rep.add("cea_sic_achiever_vs_mixed",
            (r2.achiever_state.mat - Matrix::Identity(2, 2) / 2.0).norm(), 1e-4);

    Vector fid(3);
    fid << Complex(0.7, 0.1), Complex(0.2, -0.4), Complex(0.5, 0.2);
    fid.normalize();
    POVM wh3 = weyl_heisenberg_povm(3, fid).povm;
    CapacityResult r3 = capacity_Cea(wh3, {}, opts);
    rep.add("cea_wh_qutrit_vs_ln3", std::abs(r3.value - std::log(3.0)), 1e-6);
    rep.add("cea_wh_achiever_vs_mixed",
            (r3.achiever_state.mat - Matrix::Identity(3, 3) / 3.0).norm(), 1e-4);
}

void criterion_c_vs_covariant(Report& rep, std::uint64_t seed) {
    OptimizerOptions opts;
    opts.seed = seed;
    opts.restarts = 8;

    POVM sic = weyl_heisenberg_povm(2, sic_qubit_fiducial()).povm;
    CapacityResult c_generic = capacity_C(sic, {}, opts);
    CapacityResult c_covariant = covariant_capacity(sic, opts);
    rep.add("c_sic_generic_vs_covariant",
            std::abs(c_generic.value - c_covariant.value), 1e-4);

    POVM basis;
    for (int j = 0; j < 2; ++j) {
        Matrix e = Matrix::Zero(2, 2);
        e(j, j) = 1.0;
        basis.elements.push_back(e);
    }
    CapacityResult cb = capacity_C(basis, {}, opts);
    CapacityResult cvb = covariant_capacity(basis, opts);
    rep.add("c_basis_vs_ln2", std::abs(cb.value - kLn2), 1e-8);
    rep.add("covariant_basis_vs_ln2", std::abs(cvb.value - kLn2), 1e-8);

    CapacityResult cea_sic = capacity_Cea(sic, {}, opts);
    rep.add_at_least("cea_minus_c_gap_sic", cea_sic.value - c_covariant.value,
                     1e-3);

    DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EqualityReport eq_sic = equality_condition(mixed, sic);
    rep.add("equality_condition_fails_on_sic", eq_sic.holds ? 1.0 : 0.0, 0.5);
    EqualityReport eq_basis = equality_condition(mixed, basis);
    rep.add("equality_condition_holds_on_basis", eq_basis.holds ? 0.0 : 1.0, 0.5);
}

void criterion_duality(Report& rep, std::uint64_t seed) {
    OptimizerOptions acc_opts;
    acc_opts.restarts = 2;
    acc_opts.max_iters = 80;
    acc_opts.tol = 1e-4;

    double worst_info = 0.0, worst_chi = 0.0, worst_round = 0.0;
    bool acc_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = (trial % 2 == 0) ? 2 : 3;
        HaarSampler sampler(seed * 977 + trial);
        acc_opts.seed = seed * 31 + trial;
        Ensemble pi = random_pure_ensemble(sampler, dim, dim + 2);
        POVM m = random_povm(sampler, dim, dim + 1);

        InfoDualityReport d = info_duality_check(pi, m, acc_opts);
        worst_info = std::max(worst_info, d.info_gap);
        worst_chi = std::max(worst_chi, d.chi_mutual_gap);
        acc_ok = acc_ok && d.accessible_within_chi;

        DualObservable dual = dual_observable(pi);
        Ensemble round = dual_ensemble(dual.average, dual.observable);
        if (round.size() == pi.size()) {
            for (int x = 0; x < pi.size(); ++x) {
                worst_round = std::max(
                    worst_round, std::abs(round.probs[x] - pi.probs[x]));
                worst_round = std::max(
                    worst_round, (round.states[x] - pi.states[x]).norm());
            }
        } else {
            worst_round = 1.0;
        }
    }
    rep.add("shannon_info_duality_gap", worst_info, 1e-10);
    rep.add("chi_dual_vs_mutual_gap", worst_chi, 1e-10);
    rep.add("accessible_bound_within_chi", acc_ok ? 0.0 : 1.0, 0.5);
    rep.add("dual_roundtrip_residual", worst_round, 1e-9);
}

void criterion_complementary(Report& rep, std::uint64_t seed) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = (trial % 2 == 0) ? 2 : 3;
        HaarSampler sampler(seed * 1471 + trial);
        DensityMatrix rho(random_density(sampler, dim, dim + 1));
        POVM m = random_povm(sampler, dim, dim + 1);
        worst = std::max(worst, std::abs(complementary_entropy(rho, m) -
                                         block_matrix_entropy(rho, m)));
    }
    rep.add("complementary_vs_block_matrix", worst, 1e-10);
}

void criterion_heterodyne(Report& rep, std::uint64_t) {
    FockSpec coherent_spec;
    coherent_spec.mean_photons = 1.0;
    double h_coh = husimi_entropy(
        DensityMatrix::pure(coherent_state(Complex(0.6, 0.3),
                                           coherent_spec.effective_cutoff())),
        coherent_spec);
    rep.add("wehrl_minimum_coherent", std::abs(h_coh - 1.0), 1e-3);

    double worst = 0.0;
    for (double n : {0.5, 1.0, 2.0}) {
        FockSpec spec;
        spec.mean_photons = n;
        double h = husimi_entropy(thermal_state(n, spec.effective_cutoff()), spec);
        worst = std::max(worst, std::abs(h - (1.0 + std::log(n + 1.0))));
    }
    rep.add("wehrl_thermal_vs_1_plus_ln", worst, 1e-3);

    rep.add("thermal_entropy_g1",
            std::abs(von_neumann_entropy(thermal_state(1.0, 60).mat) - 2 * kLn2),
            1e-8);

    HeterodyneCapacities het = heterodyne_capacities(1.0);
    rep.add("heterodyne_c_closed", std::abs(het.c - kLn2), 1e-15);
    rep.add("heterodyne_cea_closed", std::abs(het.cea - 2 * kLn2), 1e-15);
}

void criterion_scrooge(Report& rep, std::uint64_t seed) {
    SphereSpec spec;
    spec.dim = 2;
    spec.mc_samples = 10000;
    spec.seed = seed;
    Ensemble scrooge = scrooge_ensemble(DensityMatrix::maximally_mixed(2), spec);
    rep.add("scrooge_chi_vs_ln2", std::abs(holevo_chi(scrooge) - kLn2), 0.01);

    OptimizerOptions opts;
    opts.seed = seed;
    opts.restarts = 2;
    opts.max_iters = 150;
    opts.tol = 1e-4;
    CapacityResult acc = accessible_info(scrooge, opts);
    rep.add_at_least("scrooge_accessible_lower_bound", acc.value,
                     kLn2 - 0.5 - 0.02);
}

using CriterionFn = void (*)(Report&, std::uint64_t);

const std::map<int, std::pair<const char*, CriterionFn>>& criteria() {
    static const std::map<int, std::pair<const char*, CriterionFn>> table = {
        {1, {"subentropy-identity", &criterion_subentropy}},
        {2, {"radial-substitution-identity", &criterion_radial_substitution}},
        {3, {"sphere-moments", &criterion_moments}},
        {4, {"depolarizing-identity", &criterion_depolarizing}},
        {5, {"cea-rank-one", &criterion_cea_rank_one}},
        {6, {"c-vs-covariant", &criterion_c_vs_covariant}},
        {7, {"duality-suite", &criterion_duality}},
        {8, {"complementary-identity", &criterion_complementary}},
        {9, {"heterodyne", &criterion_heterodyne}},
        {10, {"scrooge-ensemble", &criterion_scrooge}},
    };
    return table;
}

const std::map<std::string, std::vector<int>>& suites() {
    static const std::map<std::string, std::vector<int>> table = {
        {"sphere", {1, 2, 3}},
        {"depolarizing", {4}},
        {"capacities", {5, 6, 8}},
        {"heterodyne", {9}},
        {"duality", {7, 10}},
    };
    return table;
}

}  // namespace

void Report::add(const std::string& name, double measured, double tolerance) {
    const bool ok = measured <= tolerance;
    checks.push_back({name, measured, tolerance, ok});
    pass = pass && ok;
}

void Report::add_at_least(const std::string& name, double measured,
                          double bound) {
    const bool ok = measured >= bound;
    checks.push_back({name, measured, bound, ok});
    pass = pass && ok;
}

Report criterion(int number, std::uint64_t seed) {
    auto it = criteria().find(number);
    if (it == criteria().end())
        throw std::invalid_argument("unknown criterion number");
    Report rep;
    rep.suite = it->second.first;
    it->second.second(rep, seed);
    return rep;
}

std::vector<Report> suite(const std::string& name, std::uint64_t seed) {
    std::vector<Report> out;
    if (name == "all") {
        for (const auto& [num, entry] : criteria())
            out.push_back(criterion(num, seed));
        return out;
    }
    auto it = suites().find(name);
    if (it == suites().end())
        throw std::invalid_argument("unknown suite: " + name);
    for (int num : it->second) out.push_back(criterion(num, seed));
    return out;
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, nums] : suites()) names.push_back(name);
    names.push_back("all");
    return names;
}

}  // namespace qmcap::verify
