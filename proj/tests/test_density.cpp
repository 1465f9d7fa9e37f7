#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "shor21/density.hpp"
#include "shor21/rng.hpp"

using namespace shor21;

namespace {

StateVector random_state(int n, Rng& rng) {
    StateVector s;
    s.n_qubits = n;
    s.amp.resize(std::size_t{1} << n);
    double norm2 = 0.0;
    for (auto& a : s.amp) {
        a = cplx(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
        norm2 += std::norm(a);
    }
    for (auto& a : s.amp) a /= std::sqrt(norm2);
    return s;
}

DensityMatrix random_mixed(int n, int rank, Rng& rng) {
    DensityMatrix rho;
    rho.n_qubits = n;
    const Eigen::Index d = 1ll << n;
    rho.m = Eigen::MatrixXcd::Zero(d, d);
    double total = 0.0;
    std::vector<double> w(rank);
    for (double& x : w) {
        x = rng.uniform() + 1e-3;
        total += x;
    }
    for (int k = 0; k < rank; ++k) {
        const StateVector psi = random_state(n, rng);
        Eigen::VectorXcd v(d);
        for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amp[i];
        rho.m += (w[k] / total) * (v * v.adjoint());
    }
    return rho;
}

}  // namespace

TEST_CASE("density validation catches bad matrices") {
    DensityMatrix rho = maximally_mixed(2);
    REQUIRE_NOTHROW(rho.validate());

    DensityMatrix not_hermitian = rho;
    not_hermitian.m(0, 1) = cplx(0.5, 0.0);
    REQUIRE_THROWS_AS(not_hermitian.validate(), std::invalid_argument);

    DensityMatrix bad_trace = rho;
    bad_trace.m *= 2.0;
    REQUIRE_THROWS_AS(bad_trace.validate(), std::invalid_argument);

    DensityMatrix negative = rho;
    negative.m(0, 0) = -0.1;
    negative.m(1, 1) = cplx(0.6, 0.0);
    REQUIRE_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("partial trace") {
    SECTION("tracing nothing out returns the same matrix") {
        Rng rng(3);
        const DensityMatrix rho = random_mixed(3, 2, rng);
        const std::vector<int> keep{0, 1, 2};
        const DensityMatrix red = partial_trace(rho, keep);
        REQUIRE((red.m - rho.m).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("Bell state reduces to the maximally mixed qubit") {
        StateVector bell;
        bell.n_qubits = 2;
        bell.amp = {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
        const DensityMatrix rho = density_from_state(bell);
        for (int q : {0, 1}) {
            const std::vector<int> keep{q};
            const DensityMatrix red = partial_trace(rho, keep);
            REQUIRE((red.m - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
    SECTION("reduced states stay unit-trace and PSD on random inputs") {
        Rng rng(17);
        for (int trial = 0; trial < 10; ++trial) {
            const DensityMatrix rho = random_mixed(4, 3, rng);
            const std::vector<int> keep{1, 3};
            const DensityMatrix red = partial_trace(rho, keep);
            REQUIRE_NOTHROW(red.validate());
        }
    }
    SECTION("empty keep set is rejected") {
        const DensityMatrix rho = maximally_mixed(2);
        REQUIRE_THROWS_AS(partial_trace(rho, std::vector<int>{}), std::invalid_argument);
    }
}

TEST_CASE("fidelity") {
    Rng rng(29);
    SECTION("F(rho, rho) = 1") {
        const DensityMatrix rho = random_mixed(3, 2, rng);
        REQUIRE(fidelity(rho, rho) == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("orthogonal pure states have fidelity 0") {
        const DensityMatrix a = density_from_state(basis_state(2, 0));
        const DensityMatrix b = density_from_state(basis_state(2, 3));
        REQUIRE(fidelity(a, b) == Catch::Approx(0.0).margin(1e-9));
    }
    SECTION("pure-vs-mixed fidelity equals sqrt(<psi|rho|psi>)") {
        for (int trial = 0; trial < 8; ++trial) {
            const StateVector psi = random_state(3, rng);
            const DensityMatrix rho = random_mixed(3, 3, rng);
            Eigen::VectorXcd v(8);
            for (int i = 0; i < 8; ++i) v(i) = psi.amp[i];
            const double direct = std::sqrt(std::real((v.adjoint() * rho.m * v)(0, 0)));
            REQUIRE(fidelity(density_from_state(psi), rho) == Catch::Approx(direct).margin(1e-9));
        }
    }
    SECTION("symmetric and bounded on random pairs") {
        for (int trial = 0; trial < 8; ++trial) {
            const DensityMatrix a = random_mixed(3, 2, rng);
            const DensityMatrix b = random_mixed(3, 4, rng);
            const double fab = fidelity(a, b);
            const double fba = fidelity(b, a);
            REQUIRE(fab == Catch::Approx(fba).margin(1e-9));
            REQUIRE(fab >= 0.0);
            REQUIRE(fab <= 1.0);
        }
    }
    SECTION("dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(fidelity(maximally_mixed(2), maximally_mixed(3)), std::invalid_argument);
    }
}

TEST_CASE("kolmogorov distance") {
    SECTION("identical distributions are at distance 0") {
        const std::vector<double> p{0.5, 0.25, 0.25};
        REQUIRE(kolmogorov_distance(p, p) == 0.0);
    }
    SECTION("disjoint point masses are at distance 1") {
        const std::vector<double> p{1.0, 0.0};
        const std::vector<double> q{0.0, 1.0};
        REQUIRE(kolmogorov_distance(p, q) == 1.0);
    }
    SECTION("symmetry, bounds and the triangle inequality on random triples") {
        Rng rng(31);
        auto random_dist = [&rng](std::size_t n) {
            std::vector<double> p(n);
            double s = 0.0;
            for (double& x : p) {
                x = rng.uniform();
                s += x;
            }
            for (double& x : p) x /= s;
            return p;
        };
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = random_dist(8), q = random_dist(8), r = random_dist(8);
            const double dpq = kolmogorov_distance(p, q);
            REQUIRE(dpq == Catch::Approx(kolmogorov_distance(q, p)).margin(1e-15));
            REQUIRE(dpq >= 0.0);
            REQUIRE(dpq <= 1.0);
            REQUIRE(dpq <= kolmogorov_distance(p, r) + kolmogorov_distance(r, q) + 1e-12);
        }
    }
    SECTION("mismatched supports are rejected") {
        const std::vector<double> p{1.0};
        const std::vector<double> q{0.5, 0.5};
        REQUIRE_THROWS_AS(kolmogorov_distance(p, q), std::invalid_argument);
    }
}

TEST_CASE("density evolution matches statevector evolution") {
    Rng rng(37);
    const StateVector psi = random_state(3, rng);
    Circuit c(3);
    c.add(GateKind::H, {0});
    c.add(GateKind::CX, {0, 2});
    c.add(GateKind::Toffoli, {0, 1, 2});
    c.add(GateKind::Ry, {1}, 0.7);
    const StateVector out = run_circuit(c, psi);
    const DensityMatrix rho_out = run_circuit_density(c, density_from_state(psi));
    REQUIRE((rho_out.m - density_from_state(out).m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-qubit depolarizing channel") {
    Rng rng(41);
    const DensityMatrix rho = random_mixed(3, 2, rng);
    SECTION("rate 0 is the identity channel") {
        const DensityMatrix out = depolarize_two_qubit(rho, 0, 2, 0.0);
        REQUIRE((out.m - rho.m).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("preserves trace and positivity") {
        const DensityMatrix out = depolarize_two_qubit(rho, 0, 2, 0.3);
        REQUIRE_NOTHROW(out.validate());
    }
    SECTION("rate 1 fully mixes the pair") {
        const DensityMatrix pure = density_from_state(basis_state(2, 0));
        const DensityMatrix out = depolarize_two_qubit(pure, 0, 1, 1.0);
        // (1/15) sum_{PQ != II} PQ |00><00| PQ has 1/5, 4/15 weights on the diagonal
        REQUIRE(out.m(0, 0).real() == Catch::Approx(0.2).margin(1e-12));
        for (int k = 1; k < 4; ++k) {
            REQUIRE(out.m(k, k).real() == Catch::Approx(4.0 / 15.0).margin(1e-12));
        }
    }
}
