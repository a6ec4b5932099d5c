#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qmcap/capacity.hpp"
#include "qmcap/quantum.hpp"

using namespace qmcap;

namespace {

DensityMatrix random_state(HaarSampler& s, int d, int rank) {
    Matrix rho = Matrix::Zero(d, d);
    for (int k = 0; k < rank; ++k) {
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
        Matrix e = a * a.adjoint();
        raw.push_back(e);
        total += e;
    }
    Matrix t = matrix_inv_sqrt(total);
    POVM m;
    for (const Matrix& e : raw) m.elements.push_back(t * e * t);
    return m;
}

/// Independent oracle for the complementary-output entropy: build the block
/// matrix sum_y |y><y| (x) V_y rho V_y^dag explicitly and diagonalize it.
double block_entropy_oracle(const DensityMatrix& rho, const POVM& m) {
    const int d = rho.dim();
    const int n = m.outcomes();
    Matrix block = Matrix::Zero(n * d, n * d);
    for (int y = 0; y < n; ++y) {
        Matrix v = matrix_sqrt(m.elements[y]);
        block.block(y * d, y * d, d, d) = v * rho.mat * v.adjoint();
    }
    return von_neumann_entropy(block);
}

}  // namespace

TEST_CASE("validate accepts good objects and flags bad ones") {
    HaarSampler s(1);
    DensityMatrix rho = random_state(s, 3, 2);
    CHECK(validate(rho).pass);
    POVM m = random_povm(s, 3, 5);
    CHECK(validate(m).pass);

    DensityMatrix bad(2.0 * rho.mat);  // trace 2
    Diagnostics d = validate(bad);
    CHECK_FALSE(d.pass);
    bool trace_flagged = false;
    for (const auto& c : d.checks)
        if (!c.pass && c.name.find("trace") != std::string::npos)
            trace_flagged = true;
    CHECK(trace_flagged);

    POVM broken = m;
    broken.elements[0] *= 1.5;  // breaks completeness
    CHECK_FALSE(validate(broken).pass);
}

TEST_CASE("measurement probabilities are a distribution") {
    HaarSampler s(2);
    DensityMatrix rho = random_state(s, 3, 3);
    POVM m = random_povm(s, 3, 4);
    OutcomeDistribution p = apply_measurement(rho, m);
    double total = 0.0;
    for (double v : p.probs) {
        CHECK(v >= -1e-12);
        total += v;
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("posterior states of the square-root instrument") {
    HaarSampler s(3);
    DensityMatrix rho = random_state(s, 2, 2);
    POVM m = random_povm(s, 2, 3);
    OutcomeDistribution p = apply_measurement(rho, m);
    Matrix mix = Matrix::Zero(2, 2);
    for (int y = 0; y < m.outcomes(); ++y) {
        DensityMatrix post = posterior_state(rho, m, y);
        CHECK(validate(post).pass);
        mix += p.probs[y] * post.mat;
    }
    // The unconditional post-measurement state sum_y V_y rho V_y^dag still
    // has unit trace.
    CHECK(std::abs(mix.trace().real() - 1.0) < 1e-10);
}

TEST_CASE("complementary entropy matches the explicit block matrix") {
    HaarSampler s(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 3;
        DensityMatrix rho = random_state(s, d, 1 + trial % d);
        POVM m = random_povm(s, d, d + 1);
        CHECK(std::abs(complementary_entropy(rho, m) -
                       block_entropy_oracle(rho, m)) < 1e-10);
    }
}

TEST_CASE("mutual information identity I = S(rho) + H(P) - S(complementary)") {
    HaarSampler s(5);
    for (int trial = 0; trial < 10; ++trial) {
        DensityMatrix rho = random_state(s, 3, 3);
        POVM m = random_povm(s, 3, 4);
        const double i_direct = mutual_info(rho, m);
        const double h_out = apply_measurement(rho, m).entropy();
        const double i_via_exchange = von_neumann_entropy(rho.mat) + h_out -
                                      complementary_entropy(rho, m);
        CHECK(std::abs(i_direct - i_via_exchange) < 1e-10);
    }
}

TEST_CASE("assisted output states recover the outcome probabilities") {
    HaarSampler s(6);
    DensityMatrix rho = random_state(s, 3, 3);
    POVM m = random_povm(s, 3, 4);
    // Identity encoding: the traces of the unnormalized outputs are p_y.
    std::vector<Matrix> identity{Matrix::Identity(3, 3)};
    std::vector<Matrix> sigma = assisted_output_state(rho, identity, m);
    OutcomeDistribution p = apply_measurement(rho, m);
    REQUIRE(sigma.size() == static_cast<std::size_t>(m.outcomes()));
    double trace_sum = 0.0;
    for (int y = 0; y < m.outcomes(); ++y) {
        CHECK(std::abs(sigma[y].trace().real() - p.probs[y]) < 1e-10);
        trace_sum += sigma[y].trace().real();
    }
    CHECK(trace_sum == doctest::Approx(1.0));
}

TEST_CASE("assisted output matches the double-sum oracle") {
    // Oracle: sigma_y = sum_{jk} sqrt(l_j l_k) <e_j|E(M_y)|e_k> |e_j><e_k|
    // written out term by term in the eigenbasis of rho.
    HaarSampler s(7);
    DensityMatrix rho = random_state(s, 2, 2);
    POVM m = random_povm(s, 2, 3);
    Matrix u(2, 2);  // a unitary encoding channel
    const double c = std::cos(0.3), sn = std::sin(0.3);
    u << c, -sn, sn, c;
    std::vector<Matrix> kraus{u};
    std::vector<Matrix> sigma = assisted_output_state(rho, kraus, m);

    EigenSystem es = eigh(rho.mat);
    for (int y = 0; y < m.outcomes(); ++y) {
        Matrix lifted = u.adjoint() * m.elements[y] * u;
        Matrix oracle = Matrix::Zero(2, 2);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Complex amp = es.vectors.col(j).adjoint() * lifted *
                              es.vectors.col(k);
                oracle += std::sqrt(es.values[j] * es.values[k]) *
                          std::conj(amp) *
                          (es.vectors.col(j) * es.vectors.col(k).adjoint());
            }
        CHECK((sigma[y] - oracle).norm() < 1e-12);
    }
}

TEST_CASE("coarse-graining outcomes never increases mutual information") {
    HaarSampler s(8);
    DensityMatrix rho = random_state(s, 3, 3);
    POVM m = random_povm(s, 3, 4);
    POVM coarse;
    coarse.elements.push_back(m.elements[0] + m.elements[1]);
    coarse.elements.push_back(m.elements[2] + m.elements[3]);
    CHECK(mutual_info(rho, coarse) <= mutual_info(rho, m) + 1e-12);
}

TEST_CASE("unitary covariance of mutual information") {
    HaarSampler s(9);
    DensityMatrix rho = random_state(s, 3, 2);
    POVM m = random_povm(s, 3, 4);
    // Conjugating both the state and the POVM leaves I invariant.
    Matrix h(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h(i, j) = s.gaussian();
    Eigen::HouseholderQR<Matrix> qr(h);
    Matrix u = qr.householderQ();
    DensityMatrix rho_u(u * rho.mat * u.adjoint());
    POVM m_u;
    for (const Matrix& e : m.elements) m_u.elements.push_back(u * e * u.adjoint());
    CHECK(std::abs(mutual_info(rho, m) - mutual_info(rho_u, m_u)) < 1e-10);
}
