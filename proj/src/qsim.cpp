#include "shor21/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace shor21 {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void RegisterLayout::validate() const {
    if (n_control < 0 || n_work < 0 || total != n_control + n_work) {
        throw std::invalid_argument("RegisterLayout: total must equal n_control + n_work");
    }
}

std::vector<int> RegisterLayout::control_qubits() const {
    std::vector<int> q(n_control);
    std::iota(q.begin(), q.end(), 0);
    return q;
}

std::vector<int> RegisterLayout::work_qubits() const {
    std::vector<int> q(n_work);
    std::iota(q.begin(), q.end(), n_control);
    return q;
}

std::string bitstring_of(std::uint32_t index, int n_bits) {
    std::string s(n_bits, '0');
    for (int i = 0; i < n_bits; ++i) {
        if ((index >> (n_bits - 1 - i)) & 1u) s[i] = '1';
    }
    return s;
}

std::uint32_t index_of_bitstring(const std::string& bits) {
    std::uint32_t idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("bitstring: bad character");
        idx = (idx << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return idx;
}

double StateVector::norm2() const {
    double s = 0.0;
    for (const cplx& a : amp) s += std::norm(a);
    return s;
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm2() - 1.0) <= tol;
}

StateVector basis_state(int n_qubits, std::uint32_t index) {
    StateVector s;
    s.n_qubits = n_qubits;
    s.amp.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    if (index >= s.amp.size()) throw std::out_of_range("basis_state: index out of range");
    s.amp[index] = cplx{1.0, 0.0};
    return s;
}

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Ry:
        case GateKind::Rz:
        case GateKind::S:
        case GateKind::T:
        case GateKind::Tdag:
            return 1;
        case GateKind::CX:
        case GateKind::CPhase:
        case GateKind::Swap:
            return 2;
        case GateKind::Toffoli:
        case GateKind::Margolus:
        case GateKind::Fredkin:
            return 3;
    }
    throw std::logic_error("gate_arity: unknown kind");
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Ry: return "Ry";
        case GateKind::Rz: return "Rz";
        case GateKind::S: return "S";
        case GateKind::T: return "T";
        case GateKind::Tdag: return "Tdag";
        case GateKind::CX: return "CX";
        case GateKind::CPhase: return "CPhase";
        case GateKind::Toffoli: return "Toffoli";
        case GateKind::Margolus: return "Margolus";
        case GateKind::Fredkin: return "Fredkin";
        case GateKind::Swap: return "SWAP";
    }
    throw std::logic_error("gate_name: unknown kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    static const std::pair<const char*, GateKind> table[] = {
        {"H", GateKind::H},           {"X", GateKind::X},
        {"Ry", GateKind::Ry},         {"Rz", GateKind::Rz},
        {"S", GateKind::S},           {"T", GateKind::T},
        {"Tdag", GateKind::Tdag},     {"CX", GateKind::CX},
        {"CPhase", GateKind::CPhase}, {"Toffoli", GateKind::Toffoli},
        {"Margolus", GateKind::Margolus}, {"Fredkin", GateKind::Fredkin},
        {"SWAP", GateKind::Swap},
    };
    for (const auto& [n, k] : table) {
        if (name == n) return k;
    }
    throw std::invalid_argument("unknown gate name: " + name);
}

Eigen::MatrixXcd gate_matrix(const Gate& gate) {
    const cplx i{0.0, 1.0};
    switch (gate.kind) {
        case GateKind::H: {
            Eigen::MatrixXcd m(2, 2);
            const double r = 1.0 / std::sqrt(2.0);
            m << r, r, r, -r;
            return m;
        }
        case GateKind::X: {
            Eigen::MatrixXcd m(2, 2);
            m << 0, 1, 1, 0;
            return m;
        }
        case GateKind::Ry: {
            Eigen::MatrixXcd m(2, 2);
            const double c = std::cos(gate.angle / 2.0);
            const double s = std::sin(gate.angle / 2.0);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::Rz: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
            m(0, 0) = std::exp(-i * (gate.angle / 2.0));
            m(1, 1) = std::exp(i * (gate.angle / 2.0));
            return m;
        }
        case GateKind::S: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = i;
            return m;
        }
        case GateKind::T: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::exp(i * (kPi / 4.0));
            return m;
        }
        case GateKind::Tdag: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
            m(0, 0) = 1.0;
            m(1, 1) = std::exp(-i * (kPi / 4.0));
            return m;
        }
        case GateKind::CX: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
            m(2, 2) = m(3, 3) = 0.0;
            m(2, 3) = m(3, 2) = 1.0;
            return m;
        }
        case GateKind::CPhase: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = std::exp(i * gate.angle);
            return m;
        }
        case GateKind::Swap: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
            m(1, 1) = m(2, 2) = 0.0;
            m(1, 2) = m(2, 1) = 1.0;
            return m;
        }
        case GateKind::Toffoli: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
            m(6, 6) = m(7, 7) = 0.0;
            m(6, 7) = m(7, 6) = 1.0;
            return m;
        }
        case GateKind::Margolus: {
            // Toffoli up to the relative phase |101> -> -|101>
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
            m(6, 6) = m(7, 7) = 0.0;
            m(6, 7) = m(7, 6) = 1.0;
            m(5, 5) = -1.0;
            return m;
        }
        case GateKind::Fredkin: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(8, 8);
            m(5, 5) = m(6, 6) = 0.0;
            m(5, 6) = m(6, 5) = 1.0;
            return m;
        }
    }
    throw std::logic_error("gate_matrix: unknown kind");
}

void validate_targets(int n_qubits, const Gate& gate, std::span<const int> targets) {
    const int a = gate_arity(gate.kind);
    if (static_cast<int>(targets.size()) != a) {
        throw std::invalid_argument(std::string("gate ") + gate_name(gate.kind) + ": expected " +
                                    std::to_string(a) + " qubits, got " +
                                    std::to_string(targets.size()));
    }
    std::set<int> seen;
    for (int q : targets) {
        if (q < 0 || q >= n_qubits) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
        }
        if (!seen.insert(q).second) {
            throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
        }
    }
}

void Circuit::add(GateKind kind, std::vector<int> qubits, double angle) {
    Gate g{kind, angle};
    validate_targets(n_qubits, g, qubits);
    ops.push_back(Op{g, std::move(qubits)});
}

void Circuit::append(const Circuit& other) {
    if (other.n_qubits != n_qubits) {
        throw std::invalid_argument("Circuit::append: qubit count mismatch");
    }
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

std::size_t Circuit::count_kind(GateKind kind) const {
    std::size_t n = 0;
    for (const Op& op : ops) {
        if (op.gate.kind == kind) ++n;
    }
    return n;
}

StateVector apply_gate(const StateVector& state, const Gate& gate, std::span<const int> targets) {
    validate_targets(state.n_qubits, gate, targets);
    const int n = state.n_qubits;
    const int a = static_cast<int>(targets.size());
    const std::uint32_t dim = static_cast<std::uint32_t>(state.amp.size());
    const Eigen::MatrixXcd u = gate_matrix(gate);

    StateVector out;
    out.n_qubits = n;
    out.amp.assign(dim, cplx{0.0, 0.0});

    std::uint32_t clear_mask = 0;
    for (int q : targets) clear_mask |= (1u << (n - 1 - q));

    for (std::uint32_t idx = 0; idx < dim; ++idx) {
        const cplx a_in = state.amp[idx];
        if (a_in == cplx{0.0, 0.0}) continue;
        std::uint32_t loc = 0;
        for (int j = 0; j < a; ++j) loc = (loc << 1) | static_cast<std::uint32_t>(qubit_bit(idx, targets[j], n));
        const std::uint32_t base = idx & ~clear_mask;
        for (std::uint32_t loc2 = 0; loc2 < (1u << a); ++loc2) {
            const cplx w = u(loc2, loc);
            if (w == cplx{0.0, 0.0}) continue;
            std::uint32_t idx2 = base;
            for (int j = 0; j < a; ++j) {
                if ((loc2 >> (a - 1 - j)) & 1u) idx2 |= (1u << (n - 1 - targets[j]));
            }
            out.amp[idx2] += w * a_in;
        }
    }
    return out;
}

StateVector apply_single_qubit(const StateVector& state, const Eigen::Matrix2cd& u, int qubit) {
    const int n = state.n_qubits;
    if (qubit < 0 || qubit >= n) throw std::out_of_range("apply_single_qubit: bad qubit");
    const std::uint32_t step = 1u << (n - 1 - qubit);
    StateVector out = state;
    for (std::uint32_t idx = 0; idx < out.amp.size(); ++idx) {
        if (idx & step) continue;
        const cplx a0 = state.amp[idx];
        const cplx a1 = state.amp[idx | step];
        out.amp[idx] = u(0, 0) * a0 + u(0, 1) * a1;
        out.amp[idx | step] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return out;
}

StateVector run_circuit(const Circuit& circuit, const StateVector& initial) {
    return run_circuit_prefix(circuit, initial, circuit.ops.size());
}

StateVector run_circuit_prefix(const Circuit& circuit, const StateVector& initial, std::size_t n_ops) {
    if (static_cast<int>(initial.n_qubits) != circuit.n_qubits) {
        throw std::invalid_argument("run_circuit: state/circuit qubit count mismatch");
    }
    if (!initial.is_normalized()) {
        throw std::invalid_argument("run_circuit: initial state is not normalized");
    }
    if (n_ops > circuit.ops.size()) {
        throw std::out_of_range("run_circuit_prefix: n_ops exceeds circuit length");
    }
    StateVector state = initial;
    for (std::size_t k = 0; k < n_ops; ++k) {
        const Op& op = circuit.ops[k];
        state = apply_gate(state, op.gate, op.qubits);
    }
    return state;
}

std::vector<double> probabilities(const StateVector& state) {
    if (!state.is_normalized()) {
        throw std::invalid_argument("probabilities: state is not normalized");
    }
    std::vector<double> p(state.amp.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state.amp[i]);
    return p;
}

std::vector<double> marginal(std::span<const double> dist, std::span<const int> keep, int n_qubits) {
    if (keep.empty()) throw std::invalid_argument("marginal: keep set is empty");
    if (dist.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("marginal: distribution size mismatch");
    }
    std::set<int> seen;
    for (int q : keep) {
        if (q < 0 || q >= n_qubits) throw std::out_of_range("marginal: qubit out of range");
        if (!seen.insert(q).second) throw std::invalid_argument("marginal: duplicate qubit");
    }
    const int k = static_cast<int>(keep.size());
    std::vector<double> out(std::size_t{1} << k, 0.0);
    for (std::uint32_t idx = 0; idx < dist.size(); ++idx) {
        std::uint32_t sub = 0;
        for (int j = 0; j < k; ++j) sub = (sub << 1) | static_cast<std::uint32_t>(qubit_bit(idx, keep[j], n_qubits));
        out[sub] += dist[idx];
    }
    return out;
}

}  // namespace shor21
