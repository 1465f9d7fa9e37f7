#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "reference_data.hpp"
#include "shor21/relphase.hpp"

using namespace shor21;
using namespace shor21::relphase;

TEST_CASE("checkpoint states match the published kets") {
    const auto reports = checkpoint_states();
    const double amp = 1.0 / std::sqrt(8.0);
    for (int k = 0; k < 4; ++k) {
        const auto& expected = reference_data::kCheckpointSupports[k];
        CAPTURE(k);
        REQUIRE(reports[k].support == expected);
        for (int idx : expected) {
            REQUIRE(std::abs(reports[k].state.amp[idx] - amp) < 1e-10);
        }
        for (std::uint32_t idx = 0; idx < 32; ++idx) {
            if (std::find(expected.begin(), expected.end(), static_cast<int>(idx)) == expected.end()) {
                REQUIRE(std::abs(reports[k].state.amp[idx]) < 1e-10);
            }
        }
    }
}

TEST_CASE("Psi0 support is every control pattern with work 00") {
    const auto reports = checkpoint_states();
    REQUIRE(reports[0].support.size() == 8);
    for (int idx : reports[0].support) {
        REQUIRE((idx & 3) == 0);  // work bits clear
    }
}

TEST_CASE("Psi1 has no (c1, q0, q1) = (1, 1, 1) component") {
    const auto reports = checkpoint_states();
    const StateVector& psi1 = reports[1].state;
    for (std::uint32_t idx = 0; idx < 32; ++idx) {
        if (qubit_bit(idx, 1, 5) == 1 && qubit_bit(idx, 3, 5) == 1 && qubit_bit(idx, 4, 5) == 1) {
            REQUIRE(std::abs(psi1.amp[idx]) == 0.0);
        }
    }
}

TEST_CASE("Psi2 support has size 8") {
    REQUIRE(checkpoint_states()[2].support.size() == 8);
}

TEST_CASE("states_equal_up_to_global_phase") {
    SECTION("a state equals itself times a phase") {
        StateVector psi = basis_state(3, 5);
        psi = apply_gate(psi, Gate{GateKind::H, 0.0}, std::vector<int>{0});
        StateVector rotated = psi;
        const cplx phase = std::exp(cplx(0.0, M_PI / 7.0));
        for (auto& a : rotated.amp) a *= phase;
        const auto cmp = states_equal_up_to_global_phase(psi, rotated);
        REQUIRE(cmp.equal);
        REQUIRE(cmp.deviation < 1e-14);
    }
    SECTION("orthogonal basis states differ") {
        const auto cmp = states_equal_up_to_global_phase(basis_state(1, 0), basis_state(1, 1));
        REQUIRE_FALSE(cmp.equal);
    }
    SECTION("dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(states_equal_up_to_global_phase(basis_state(1, 0), basis_state(2, 0)),
                          std::invalid_argument);
    }
    SECTION("Fig. 2 and Fig. 3 final states agree up to global phase") {
        const StateVector a = run_circuit(shor::build_compiled_circuit(shor::CircuitVariant::FullToffoli),
                                          basis_state(5, 0));
        const StateVector b = run_circuit(shor::build_compiled_circuit(shor::CircuitVariant::Margolus),
                                          basis_state(5, 0));
        const auto cmp = states_equal_up_to_global_phase(a, b);
        REQUIRE(cmp.equal);
        REQUIRE(cmp.deviation < 1e-10);
    }
}

TEST_CASE("substitution certificate for the compiled circuits") {
    const Circuit full = shor::build_compiled_circuit(shor::CircuitVariant::FullToffoli);
    const Circuit marg = shor::build_compiled_circuit(shor::CircuitVariant::Margolus);
    const SubstitutionCertificate cert = verify_substitution(full, marg);
    REQUIRE(cert.safe);
    REQUIRE(cert.final_deviation < 1e-10);
    REQUIRE(cert.records.size() == 3);
    for (const auto& rec : cert.records) {
        REQUIRE(rec.pattern_probability < 1e-18);
        REQUIRE(rec.max_pattern_amplitude < 1e-9);
    }
}

TEST_CASE("identical circuits verify with deviation zero") {
    const Circuit full = shor::build_compiled_circuit(shor::CircuitVariant::FullToffoli);
    const SubstitutionCertificate cert = verify_substitution(full, full);
    REQUIRE(cert.safe);
    REQUIRE(cert.final_deviation == 0.0);
}

TEST_CASE("every subset of Toffoli replacements stays safe") {
    const Circuit full = shor::build_compiled_circuit(shor::CircuitVariant::FullToffoli);
    std::vector<std::size_t> toffoli_positions;
    for (std::size_t i = 0; i < full.ops.size(); ++i) {
        if (full.ops[i].gate.kind == GateKind::Toffoli) toffoli_positions.push_back(i);
    }
    REQUIRE(toffoli_positions.size() == 3);
    for (int mask = 0; mask < 8; ++mask) {
        Circuit partial = full;
        for (int b = 0; b < 3; ++b) {
            if ((mask >> b) & 1) partial.ops[toffoli_positions[b]].gate.kind = GateKind::Margolus;
        }
        const SubstitutionCertificate cert = verify_substitution(full, partial);
        CAPTURE(mask);
        REQUIRE(cert.safe);
        REQUIRE(cert.final_deviation < 1e-10);
    }
}

TEST_CASE("a circuit that reaches |101> on a Margolus triple is unsafe") {
    const auto [full, rel] = inject_101_circuits();
    const SubstitutionCertificate cert = verify_substitution(full, rel);
    REQUIRE_FALSE(cert.safe);
    REQUIRE(cert.records.size() == 1);
    REQUIRE(cert.records[0].pattern_probability > 0.4);
    REQUIRE(cert.final_deviation > 0.5);
}

TEST_CASE("structural misalignment is rejected") {
    const Circuit full = shor::build_compiled_circuit(shor::CircuitVariant::FullToffoli);
    Circuit shuffled = full;
    shuffled.ops.pop_back();
    REQUIRE_THROWS_AS(verify_substitution(full, shuffled), std::invalid_argument);

    Circuit retargeted = shor::build_compiled_circuit(shor::CircuitVariant::Margolus);
    retargeted.ops[0].qubits = {1};
    REQUIRE_THROWS_AS(verify_substitution(full, retargeted), std::invalid_argument);
}
