#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "shor21/noise.hpp"
#include "shor21/pauli.hpp"
#include "shor21/rng.hpp"
#include "shor21/tomography.hpp"

using namespace shor21;
using namespace shor21::tomo;

TEST_CASE("tomography settings enumeration") {
    const auto one = tomography_settings(1);
    REQUIRE(one.size() == 3);
    REQUIRE(one[0].bases == "X");
    REQUIRE(one[1].bases == "Y");
    REQUIRE(one[2].bases == "Z");
    const auto two = tomography_settings(2);
    REQUIRE(two.size() == 9);
    REQUIRE(two[0].bases == "XX");
    REQUIRE(two[1].bases == "XY");
    const auto three = tomography_settings(3);
    REQUIRE(three.size() == 27);
    for (std::size_t i = 1; i < three.size(); ++i) {
        REQUIRE(three[i - 1].bases < three[i].bases);  // lexicographic
    }
}

TEST_CASE("simulated tomography of |000> in the ZZZ basis") {
    const DensityMatrix rho = density_from_state(basis_state(3, 0));
    const TomographyDataset ds = simulate_tomography(rho, 2048, 5);
    REQUIRE(ds.per_setting.at("ZZZ").counts.at("000") == 2048);
}

TEST_CASE("maximally mixed state samples uniformly in every basis") {
    const TomographyDataset ds = simulate_tomography(maximally_mixed(3), 8192, 9);
    for (const auto& [bases, counts] : ds.per_setting) {
        const auto p = counts.probabilities();
        for (double v : p) REQUIRE(v == Catch::Approx(0.125).margin(0.03));
    }
}

TEST_CASE("exact setting probabilities reproduce dense expectations") {
    const DensityMatrix rho = ideal_control_state();
    const auto probs = exact_setting_probabilities(rho);
    // every weight-3 Pauli expectation, derived from its own setting, must
    // match tr(rho sigma)
    for (const auto& [bases, p] : probs) {
        const pauli::PauliString full(bases);
        Eigen::MatrixXcd sigma = Eigen::MatrixXcd::Identity(1, 1);
        const cplx i{0.0, 1.0};
        for (char c : bases) {
            Eigen::Matrix2cd m;
            if (c == 'X') {
                m << 0, 1, 1, 0;
            } else if (c == 'Y') {
                m << 0, -i, i, 0;
            } else {
                m << 1, 0, 0, -1;
            }
            Eigen::MatrixXcd next(sigma.rows() * 2, sigma.cols() * 2);
            for (Eigen::Index r = 0; r < sigma.rows(); ++r) {
                for (Eigen::Index cc = 0; cc < sigma.cols(); ++cc) {
                    next.block<2, 2>(2 * r, 2 * cc) = sigma(r, cc) * m;
                }
            }
            sigma = std::move(next);
        }
        const double dense = (rho.m * sigma).trace().real();
        const double derived = pauli::expectation_from_probs(p, full, full);
        REQUIRE(derived == Catch::Approx(dense).margin(1e-12));
    }
}

TEST_CASE("reconstruction from exact probabilities is essentially exact") {
    const DensityMatrix rho = ideal_control_state();
    const DensityMatrix hat = reconstruct_from_probabilities(exact_setting_probabilities(rho), 3);
    REQUIRE_NOTHROW(hat.validate());
    REQUIRE(fidelity(hat, rho) > 0.9999);
}

TEST_CASE("reconstruction from sampled data recovers the ideal control state") {
    const DensityMatrix rho = ideal_control_state();
    const TomographyDataset ds = simulate_tomography(rho, 8192, 31);
    const DensityMatrix hat = reconstruct(ds);
    REQUIRE_NOTHROW(hat.validate());
    REQUIRE(fidelity(hat, rho) > 0.99);
}

TEST_CASE("reconstruction of the maximally mixed state at 8192 shots") {
    const DensityMatrix rho = maximally_mixed(3);
    const TomographyDataset ds = simulate_tomography(rho, 8192, 77);
    const DensityMatrix hat = reconstruct(ds);
    REQUIRE((hat.m - rho.m).cwiseAbs().maxCoeff() < 0.01);
}

TEST_CASE("reconstruction output is always a valid density matrix") {
    // garbage counts: heavily skewed, inconsistent across settings
    TomographyDataset ds;
    ds.n_qubits = 2;
    ds.shots = 100;
    Rng rng(13);
    for (const auto& s : tomography_settings(2)) {
        std::vector<std::uint64_t> dense(4, 0);
        dense[rng.uniform_index(4)] = 60;
        dense[rng.uniform_index(4)] += 40;
        ds.per_setting[s.bases] = CountsVector::from_dense(dense, 2);
    }
    const DensityMatrix hat = reconstruct(ds);
    REQUIRE_NOTHROW(hat.validate());
}

TEST_CASE("PSD projection is idempotent on valid states") {
    const DensityMatrix rho = ideal_control_state();
    const DensityMatrix projected = project_to_density(rho.m, 3);
    REQUIRE((projected.m - rho.m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("round-trip fidelity improves with shots on average") {
    const DensityMatrix rho = ideal_control_state();
    const std::uint64_t shot_grid[3] = {256, 2048, 16384};
    double mean_fid[3] = {0.0, 0.0, 0.0};
    const int n_seeds = 20;
    for (int g = 0; g < 3; ++g) {
        for (int seed = 0; seed < n_seeds; ++seed) {
            const TomographyDataset ds =
                simulate_tomography(rho, shot_grid[g], derive_seed(10 + g, seed));
            mean_fid[g] += fidelity(reconstruct(ds), rho) / n_seeds;
        }
    }
    REQUIRE(mean_fid[0] <= mean_fid[1]);
    REQUIRE(mean_fid[1] <= mean_fid[2]);
}

TEST_CASE("incomplete datasets are rejected") {
    const DensityMatrix rho = maximally_mixed(2);
    TomographyDataset ds = simulate_tomography(rho, 128, 3);
    ds.per_setting.erase("XY");
    REQUIRE_THROWS_AS(reconstruct(ds), std::invalid_argument);
}

TEST_CASE("score against the ideal control state") {
    const DensityMatrix rho = ideal_control_state();
    SECTION("the ideal scores fidelity 1 against itself") {
        const auto score = score_against_ideal(rho, rho);
        REQUIRE(score.fidelity == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(score.re.rows() == 8);
        REQUIRE(score.im.rows() == 8);
    }
    SECTION("the maximally mixed state scores the eigenvalue-oracle value") {
        // F(rho_id, I/8) = sum_i sqrt(lambda_i / 8) over the eigenvalues of rho_id
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.m, Eigen::EigenvaluesOnly);
        double expected = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            expected += std::sqrt(std::max(es.eigenvalues()(i), 0.0) / 8.0);
        }
        const auto score = score_against_ideal(maximally_mixed(3), rho);
        REQUIRE(score.fidelity == Catch::Approx(expected).margin(1e-9));
    }
    SECTION("dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(score_against_ideal(maximally_mixed(2), rho), std::invalid_argument);
    }
    SECTION("noisy synthetic reconstruction lands between 0.5 and 1") {
        // 3% symmetric readout noise on every setting's outcome distribution
        const auto model = noise::ReadoutNoiseModel::symmetric(3, 0.03);
        std::map<std::string, std::vector<double>> noisy;
        for (const auto& [bases, p] : exact_setting_probabilities(rho)) {
            noisy[bases] = noise::apply_readout_noise(p, model);
        }
        const DensityMatrix hat = reconstruct_from_probabilities(noisy, 3);
        const auto score = score_against_ideal(hat, rho);
        REQUIRE(score.fidelity > 0.5);
        REQUIRE(score.fidelity < 1.0);
    }
}
