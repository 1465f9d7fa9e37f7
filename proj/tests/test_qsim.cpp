#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "shor21/qsim.hpp"
#include "shor21/rng.hpp"

using namespace shor21;

namespace {

double unitarity_defect(const Eigen::MatrixXcd& u) {
    const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

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

}  // namespace

TEST_CASE("register layout conventions") {
    RegisterLayout layout;
    layout.validate();
    REQUIRE(layout.total == 5);
    REQUIRE(layout.control_qubits() == std::vector<int>{0, 1, 2});
    REQUIRE(layout.work_qubits() == std::vector<int>{3, 4});
    // index = c0*16 + c1*8 + c2*4 + q0*2 + q1
    REQUIRE(bitstring_of(0b10110, 5) == "10110");
    REQUIRE(index_of_bitstring("10110") == 0b10110);
    REQUIRE(qubit_bit(0b10000, 0, 5) == 1);
    REQUIRE(qubit_bit(0b00001, 4, 5) == 1);

    RegisterLayout bad;
    bad.total = 4;
    REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("every gate matrix is unitary within 1e-12") {
    Rng rng(11);
    for (GateKind kind : {GateKind::H, GateKind::X, GateKind::S, GateKind::T, GateKind::Tdag,
                          GateKind::CX, GateKind::Toffoli, GateKind::Margolus, GateKind::Fredkin,
                          GateKind::Swap}) {
        CAPTURE(gate_name(kind));
        REQUIRE(unitarity_defect(gate_matrix(Gate{kind, 0.0})) < 1e-12);
    }
    for (int k = 0; k < 50; ++k) {
        const double angle = 20.0 * (rng.uniform() - 0.5);
        for (GateKind kind : {GateKind::Ry, GateKind::Rz, GateKind::CPhase}) {
            REQUIRE(unitarity_defect(gate_matrix(Gate{kind, angle})) < 1e-12);
        }
    }
}

TEST_CASE("margolus equals toffoli except the |101> entry") {
    const Eigen::MatrixXcd t = gate_matrix(Gate{GateKind::Toffoli, 0.0});
    const Eigen::MatrixXcd m = gate_matrix(Gate{GateKind::Margolus, 0.0});
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            if (r == 5 && c == 5) {
                REQUIRE(m(r, c) == cplx(-1.0, 0.0));
                REQUIRE(t(r, c) == cplx(1.0, 0.0));
            } else {
                REQUIRE(m(r, c) == t(r, c));
            }
        }
    }
}

TEST_CASE("single gate truth tables") {
    SECTION("H on |0>") {
        const StateVector out = apply_gate(basis_state(1, 0), Gate{GateKind::H, 0.0}, std::vector<int>{0});
        REQUIRE(std::abs(out.amp[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
        REQUIRE(std::abs(out.amp[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
    }
    SECTION("CX control 0 target 1 maps |10> to |11>") {
        const StateVector out =
            apply_gate(basis_state(2, 0b10), Gate{GateKind::CX, 0.0}, std::vector<int>{0, 1});
        REQUIRE(std::abs(out.amp[0b11] - 1.0) < 1e-15);
    }
    SECTION("margolus flips the sign of |101>") {
        const StateVector out =
            apply_gate(basis_state(3, 0b101), Gate{GateKind::Margolus, 0.0}, std::vector<int>{0, 1, 2});
        REQUIRE(std::abs(out.amp[0b101] + 1.0) < 1e-15);
    }
    SECTION("fredkin swaps the targets when the control is set") {
        const StateVector out =
            apply_gate(basis_state(3, 0b110), Gate{GateKind::Fredkin, 0.0}, std::vector<int>{0, 1, 2});
        REQUIRE(std::abs(out.amp[0b101] - 1.0) < 1e-15);
    }
}

TEST_CASE("apply_gate validates its targets") {
    const StateVector s = basis_state(3, 0);
    REQUIRE_THROWS_AS(apply_gate(s, Gate{GateKind::CX, 0.0}, std::vector<int>{0}), std::invalid_argument);
    REQUIRE_THROWS_AS(apply_gate(s, Gate{GateKind::H, 0.0}, std::vector<int>{3}), std::out_of_range);
    REQUIRE_THROWS_AS(apply_gate(s, Gate{GateKind::CX, 0.0}, std::vector<int>{1, 1}),
                      std::invalid_argument);
}

TEST_CASE("run_circuit basics") {
    SECTION("empty circuit leaves the state unchanged") {
        Circuit c(5);
        const StateVector in = basis_state(5, 7);
        const StateVector out = run_circuit(c, in);
        for (std::size_t i = 0; i < in.amp.size(); ++i) REQUIRE(out.amp[i] == in.amp[i]);
    }
    SECTION("X on q4 maps |00000> to |00001>") {
        Circuit c(5);
        c.add(GateKind::X, {4});
        const StateVector out = run_circuit(c, basis_state(5, 0));
        REQUIRE(std::abs(out.amp[1] - 1.0) < 1e-15);
    }
    SECTION("unnormalized input is rejected") {
        Circuit c(2);
        StateVector bad = basis_state(2, 0);
        bad.amp[0] = 2.0;
        REQUIRE_THROWS_AS(run_circuit(c, bad), std::invalid_argument);
    }
}

TEST_CASE("random 200-gate circuits preserve the norm within 1e-10") {
    Rng rng(202);
    const GateKind kinds[] = {GateKind::H,  GateKind::X,       GateKind::Ry,      GateKind::Rz,
                              GateKind::S,  GateKind::T,       GateKind::Tdag,    GateKind::CX,
                              GateKind::CPhase, GateKind::Toffoli, GateKind::Margolus,
                              GateKind::Fredkin, GateKind::Swap};
    for (int trial = 0; trial < 5; ++trial) {
        Circuit c(5);
        for (int g = 0; g < 200; ++g) {
            const GateKind kind = kinds[rng.uniform_index(std::size(kinds))];
            std::vector<int> qs;
            while (static_cast<int>(qs.size()) < gate_arity(kind)) {
                const int q = static_cast<int>(rng.uniform_index(5));
                if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
            }
            c.add(kind, qs, 6.28 * (rng.uniform() - 0.5));
        }
        StateVector in = random_state(5, rng);
        const StateVector out = run_circuit(c, in);
        REQUIRE(std::abs(out.norm2() - 1.0) < 1e-10);
    }
}

TEST_CASE("probabilities") {
    SECTION("|00000> is a point mass") {
        const auto p = probabilities(basis_state(5, 0));
        REQUIRE(p[0] == 1.0);
        for (std::size_t i = 1; i < p.size(); ++i) REQUIRE(p[i] == 0.0);
    }
    SECTION("GHZ state splits evenly") {
        StateVector s;
        s.n_qubits = 5;
        s.amp.assign(32, cplx{0.0, 0.0});
        s.amp[0] = s.amp[31] = 1.0 / std::sqrt(2.0);
        const auto p = probabilities(s);
        REQUIRE(p[0] == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(p[31] == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("unnormalized state is rejected") {
        StateVector bad = basis_state(2, 0);
        bad.amp[1] = 0.5;
        REQUIRE_THROWS_AS(probabilities(bad), std::invalid_argument);
    }
}

TEST_CASE("marginal distributions") {
    SECTION("keeping every qubit changes nothing") {
        Rng rng(5);
        const auto p = probabilities(random_state(3, rng));
        const std::vector<int> keep{0, 1, 2};
        const auto m = marginal(p, keep, 3);
        for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(m[i] == Catch::Approx(p[i]).margin(1e-15));
    }
    SECTION("uniform two-qubit distribution marginalizes to uniform") {
        const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
        const std::vector<int> keep{0};
        const auto m = marginal(p, keep, 2);
        REQUIRE(m.size() == 2);
        REQUIRE(m[0] == Catch::Approx(0.5));
        REQUIRE(m[1] == Catch::Approx(0.5));
    }
    SECTION("marginal sums to one") {
        Rng rng(6);
        const auto p = probabilities(random_state(5, rng));
        const std::vector<int> keep{1, 3};
        const auto m = marginal(p, keep, 5);
        double total = 0.0;
        for (double v : m) total += v;
        REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("empty keep set is rejected") {
        const std::vector<double> p{1.0, 0.0};
        REQUIRE_THROWS_AS(marginal(p, std::vector<int>{}, 1), std::invalid_argument);
    }
}

TEST_CASE("seed derivation is stable and stream-separating") {
    REQUIRE(derive_seed(42, 0) == derive_seed(42, 0));
    REQUIRE(derive_seed(42, 0) != derive_seed(42, 1));
    REQUIRE(derive_seed(42, 0) != derive_seed(43, 0));
}
