#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "shor21/qsim.hpp"
#include "shor21/shor.hpp"

namespace shor21::relphase {

constexpr double kSupportThreshold = 1e-9;
constexpr double kAmplitudeThreshold = 1e-9;
constexpr double kDeviationThreshold = 1e-10;

enum class CheckpointLabel { Psi0, Psi1, Psi2, Psi3 };

const char* checkpoint_name(CheckpointLabel label);

struct CheckpointReport {
    CheckpointLabel label;
    StateVector state;
    std::vector<int> support;  // basis indices with |amp| > kSupportThreshold
};

// the four marked states of the compiled Margolus circuit
std::array<CheckpointReport, 4> checkpoint_states();

struct GlobalPhaseComparison {
    bool equal = false;
    double deviation = 0.0;  // min over phi of max_i |a_i - e^{i phi} b_i|
};

GlobalPhaseComparison states_equal_up_to_global_phase(const StateVector& a, const StateVector& b);

struct MargolusRecord {
    std::size_t op_index = 0;
    std::array<int, 3> qubits{};      // (control a, control b, target)
    double pattern_probability = 0.0; // summed |amp|^2 on the local |101> pattern just before the gate
    double max_pattern_amplitude = 0.0;
};

struct SubstitutionCertificate {
    std::vector<MargolusRecord> records;
    double final_deviation = 0.0;
    bool safe = false;
};

// Simulates `relphase` from all-zeros, recording the weight on each Margolus
// gate's |101> pattern just before it fires, then compares both final states
// up to global phase. The circuits must be identical except for
// Toffoli <-> Margolus kinds at matching positions.
SubstitutionCertificate verify_substitution(const Circuit& full, const Circuit& relphase);

// test hook: a small circuit pair that steers a Margolus triple through |101>
std::pair<Circuit, Circuit> inject_101_circuits();

}  // namespace shor21::relphase
