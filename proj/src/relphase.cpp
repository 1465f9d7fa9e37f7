#include "shor21/relphase.hpp"

#include <cmath>
#include <stdexcept>

namespace shor21::relphase {

const char* checkpoint_name(CheckpointLabel label) {
    switch (label) {
        case CheckpointLabel::Psi0: return "Psi0";
        case CheckpointLabel::Psi1: return "Psi1";
        case CheckpointLabel::Psi2: return "Psi2";
        case CheckpointLabel::Psi3: return "Psi3";
    }
    throw std::logic_error("checkpoint_name: bad label");
}

std::array<CheckpointReport, 4> checkpoint_states() {
    const Circuit circuit = shor::build_compiled_circuit(shor::CircuitVariant::Margolus);
    const auto positions = shor::compiled_checkpoint_op_counts();
    const StateVector zero = basis_state(5, 0);

    std::array<CheckpointReport, 4> out;
    const CheckpointLabel labels[4] = {CheckpointLabel::Psi0, CheckpointLabel::Psi1,
                                       CheckpointLabel::Psi2, CheckpointLabel::Psi3};
    for (int k = 0; k < 4; ++k) {
        CheckpointReport r;
        r.label = labels[k];
        r.state = run_circuit_prefix(circuit, zero, positions[k]);
        for (std::uint32_t i = 0; i < r.state.amp.size(); ++i) {
            if (std::abs(r.state.amp[i]) > kSupportThreshold) r.support.push_back(static_cast<int>(i));
        }
        out[k] = r;
    }
    return out;
}

GlobalPhaseComparison states_equal_up_to_global_phase(const StateVector& a, const StateVector& b) {
    if (a.amp.size() != b.amp.size()) {
        throw std::invalid_argument("states_equal_up_to_global_phase: dimension mismatch");
    }
    // anchor the phase on the largest-magnitude amplitude of a
    std::size_t k = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i) {
        const double m = std::abs(a.amp[i]);
        if (m > best) {
            best = m;
            k = i;
        }
    }
    GlobalPhaseComparison cmp;
    if (best == 0.0) {
        for (std::size_t i = 0; i < b.amp.size(); ++i) {
            cmp.deviation = std::max(cmp.deviation, std::abs(b.amp[i]));
        }
        cmp.equal = cmp.deviation < kDeviationThreshold;
        return cmp;
    }
    cplx phase{1.0, 0.0};
    if (std::abs(b.amp[k]) > 0.0) {
        phase = a.amp[k] / b.amp[k];
        phase /= std::abs(phase);
    }
    for (std::size_t i = 0; i < a.amp.size(); ++i) {
        cmp.deviation = std::max(cmp.deviation, std::abs(a.amp[i] - phase * b.amp[i]));
    }
    cmp.equal = cmp.deviation < kDeviationThreshold;
    return cmp;
}

SubstitutionCertificate verify_substitution(const Circuit& full, const Circuit& relphase) {
    if (full.n_qubits != relphase.n_qubits || full.ops.size() != relphase.ops.size()) {
        throw std::invalid_argument("verify_substitution: circuits are not structurally aligned");
    }
    for (std::size_t i = 0; i < full.ops.size(); ++i) {
        const Op& f = full.ops[i];
        const Op& r = relphase.ops[i];
        const bool swap_pair =
            (f.gate.kind == GateKind::Toffoli && r.gate.kind == GateKind::Margolus) ||
            (f.gate.kind == GateKind::Margolus && r.gate.kind == GateKind::Toffoli);
        const bool same_kind = f.gate.kind == r.gate.kind && f.gate.angle == r.gate.angle;
        if (!(same_kind || swap_pair) || f.qubits != r.qubits) {
            throw std::invalid_argument("verify_substitution: op mismatch at position " +
                                        std::to_string(i));
        }
    }

    SubstitutionCertificate cert;
    StateVector state = basis_state(relphase.n_qubits, 0);
    const int n = relphase.n_qubits;
    for (std::size_t i = 0; i < relphase.ops.size(); ++i) {
        const Op& op = relphase.ops[i];
        if (op.gate.kind == GateKind::Margolus) {
            MargolusRecord rec;
            rec.op_index = i;
            rec.qubits = {op.qubits[0], op.qubits[1], op.qubits[2]};
            for (std::uint32_t idx = 0; idx < state.amp.size(); ++idx) {
                if (qubit_bit(idx, op.qubits[0], n) == 1 && qubit_bit(idx, op.qubits[1], n) == 0 &&
                    qubit_bit(idx, op.qubits[2], n) == 1) {
                    const double m = std::abs(state.amp[idx]);
                    rec.pattern_probability += m * m;
                    rec.max_pattern_amplitude = std::max(rec.max_pattern_amplitude, m);
                }
            }
            cert.records.push_back(rec);
        }
        state = apply_gate(state, op.gate, op.qubits);
    }

    const StateVector full_final = run_circuit(full, basis_state(full.n_qubits, 0));
    const GlobalPhaseComparison cmp = states_equal_up_to_global_phase(full_final, state);
    cert.final_deviation = cmp.deviation;

    bool amplitudes_ok = true;
    for (const MargolusRecord& rec : cert.records) {
        if (rec.max_pattern_amplitude >= kAmplitudeThreshold) amplitudes_ok = false;
    }
    cert.safe = amplitudes_ok && cert.final_deviation < kDeviationThreshold;
    return cert;
}

std::pair<Circuit, Circuit> inject_101_circuits() {
    // H puts the first control in superposition, X lights the target: the
    // Margolus triple then sees |101> on half the amplitude and the relative
    // phase becomes observable.
    Circuit full(3);
    full.add(GateKind::H, {0});
    full.add(GateKind::X, {2});
    full.add(GateKind::Toffoli, {0, 1, 2});
    Circuit rel(3);
    rel.add(GateKind::H, {0});
    rel.add(GateKind::X, {2});
    rel.add(GateKind::Margolus, {0, 1, 2});
    return {full, rel};
}

}  // namespace shor21::relphase
