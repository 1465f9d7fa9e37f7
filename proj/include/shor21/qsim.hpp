#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace shor21 {

using cplx = std::complex<double>;

constexpr double kNormTol = 1e-10;
constexpr double kUnitaryTol = 1e-12;
constexpr double kPsdTol = 1e-8;

// Fixed register layout of the compiled order-finding circuit. Global qubit
// order is (c0, c1, c2, q0, q1); qubit 0 (c0) carries the most significant
// bit of a basis index, so index = c0*16 + c1*8 + c2*4 + q0*2 + q1. The
// control integer is x = c2 + 2*c1 + 4*c0 and the work bitstring is q0 q1
// with q1 least significant.
struct RegisterLayout {
    int n_control = 3;
    int n_work = 2;
    int total = 5;

    void validate() const;
    std::vector<int> control_qubits() const;
    std::vector<int> work_qubits() const;
};

// bit of `qubit` inside basis `index` of an n-qubit register (qubit 0 = MSB)
inline int qubit_bit(std::uint32_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

std::string bitstring_of(std::uint32_t index, int n_bits);
std::uint32_t index_of_bitstring(const std::string& bits);

struct StateVector {
    std::vector<cplx> amp;
    int n_qubits = 0;

    std::size_t dim() const { return amp.size(); }
    double norm2() const;
    bool is_normalized(double tol = kNormTol) const;
};

StateVector basis_state(int n_qubits, std::uint32_t index);

enum class GateKind { H, X, Ry, Rz, S, T, Tdag, CX, CPhase, Toffoli, Margolus, Fredkin, Swap };

struct Gate {
    GateKind kind = GateKind::H;
    double angle = 0.0;  // used by Ry, Rz, CPhase
};

int gate_arity(GateKind kind);
const char* gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

// unitary of the gate in the local basis |q_first ... q_last>, first listed
// qubit most significant (Toffoli/Margolus: controls first, target last)
Eigen::MatrixXcd gate_matrix(const Gate& gate);

struct Op {
    Gate gate;
    std::vector<int> qubits;
};

struct Circuit {
    int n_qubits = 0;
    std::vector<Op> ops;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    void add(GateKind kind, std::vector<int> qubits, double angle = 0.0);
    void append(const Circuit& other);
    std::size_t count_kind(GateKind kind) const;
};

void validate_targets(int n_qubits, const Gate& gate, std::span<const int> targets);

StateVector apply_gate(const StateVector& state, const Gate& gate, std::span<const int> targets);
StateVector run_circuit(const Circuit& circuit, const StateVector& initial);
// state after the first n_ops operations only
StateVector run_circuit_prefix(const Circuit& circuit, const StateVector& initial, std::size_t n_ops);

// Born probabilities over all 2^n bitstrings, ascending index order
std::vector<double> probabilities(const StateVector& state);

// sum out the qubits not listed in `keep`; output bit j corresponds to keep[j]
std::vector<double> marginal(std::span<const double> dist, std::span<const int> keep, int n_qubits);

// apply an arbitrary single-qubit 2x2 matrix (used by Pauli/tomography rotations)
StateVector apply_single_qubit(const StateVector& state, const Eigen::Matrix2cd& u, int qubit);

}  // namespace shor21
