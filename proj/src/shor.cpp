#include "shor21/shor.hpp"

#include <numeric>
#include <stdexcept>

namespace shor21::shor {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kC0 = 0, kC1 = 1, kC2 = 2, kQ0 = 3, kQ1 = 4;
}  // namespace

void ShorInstance::validate() const {
    if (n <= 2 || n % 2 == 0) throw std::invalid_argument("ShorInstance: N must be odd and > 2");
    if (a <= 1 || a >= n) throw std::invalid_argument("ShorInstance: need 1 < a < N");
    if (std::gcd(a, n) != 1) throw std::invalid_argument("ShorInstance: a and N share a factor");
    bool composite = false;
    for (long long d = 3; d * d <= n; d += 2) {
        if (n % d == 0) {
            composite = true;
            break;
        }
    }
    if (!composite) throw std::invalid_argument("ShorInstance: N must be composite");
}

std::uint32_t work_level_encoding(long long level) {
    switch (level) {
        case 1: return 0b00;
        case 4: return 0b01;
        case 16: return 0b10;
    }
    throw std::invalid_argument("work_level_encoding: level not in {1, 4, 16}");
}

namespace {

Circuit u1_block(int control, GateKind /*toffoli_kind*/) {
    Circuit c(5);
    c.add(GateKind::CX, {control, kQ1});
    return c;
}

Circuit u2_block(int control, GateKind toffoli_kind) {
    Circuit c(5);
    c.add(GateKind::CX, {control, kQ1});
    c.add(GateKind::CX, {kQ1, kQ0});
    c.add(toffoli_kind, {control, kQ0, kQ1});
    c.add(GateKind::CX, {kQ1, kQ0});
    return c;
}

Circuit u4_block(int control, GateKind toffoli_kind) {
    Circuit c(5);
    c.add(GateKind::X, {kQ1});
    c.add(toffoli_kind, {control, kQ1, kQ0});
    c.add(GateKind::X, {kQ1});
    c.add(GateKind::CX, {kQ1, kQ0});
    c.add(toffoli_kind, {control, kQ0, kQ1});
    c.add(GateKind::CX, {kQ1, kQ0});
    return c;
}

}  // namespace

Circuit build_u1() { return u1_block(kC2, GateKind::Toffoli); }
Circuit build_u2() { return u2_block(kC1, GateKind::Toffoli); }
Circuit build_u4() { return u4_block(kC0, GateKind::Toffoli); }

Circuit inverse_qft(int n_bits) {
    if (n_bits < 1) throw std::invalid_argument("inverse_qft: need at least one qubit");
    Circuit c(n_bits);
    // reverse of the standard QFT ladder, phases conjugated, swaps first
    for (int i = 0; i < n_bits / 2; ++i) c.add(GateKind::Swap, {i, n_bits - 1 - i});
    for (int i = n_bits - 1; i >= 0; --i) {
        for (int k = n_bits - 1; k > i; --k) {
            c.add(GateKind::CPhase, {k, i}, -kPi / static_cast<double>(1 << (k - i)));
        }
        c.add(GateKind::H, {i});
    }
    return c;
}

Circuit build_compiled_circuit(CircuitVariant variant, const ControlAssignment& controls) {
    const GateKind tk = variant == CircuitVariant::Margolus ? GateKind::Margolus : GateKind::Toffoli;
    {
        std::array<int, 3> cs{controls.u1, controls.u2, controls.u4};
        for (int q : cs) {
            if (q < 0 || q > 2) throw std::invalid_argument("control assignment must use c0..c2");
        }
        if (cs[0] == cs[1] || cs[0] == cs[2] || cs[1] == cs[2]) {
            throw std::invalid_argument("control assignment must be a permutation");
        }
    }

    Circuit c(5);
    c.add(GateKind::H, {kC0});
    c.add(GateKind::H, {kC1});
    c.add(GateKind::H, {kC2});
    c.append(u1_block(controls.u1, tk));
    c.append(u2_block(controls.u2, tk));
    c.append(u4_block(controls.u4, tk));

    // The inverse QFT reads the phase bits in significance order: the qubit
    // driving U^4 carries the most significant bit.
    const int qft_order[3] = {controls.u4, controls.u2, controls.u1};
    Circuit iqft = inverse_qft(3);
    for (const Op& op : iqft.ops) {
        Op embedded = op;
        for (int& q : embedded.qubits) q = qft_order[q];
        c.ops.push_back(embedded);
    }
    c.n_qubits = 5;
    return c;
}

std::array<std::size_t, 4> compiled_checkpoint_op_counts() { return {3, 5, 8, 11}; }

std::size_t compiled_mod_exp_op_count() { return 14; }

StateVector ideal_pre_qft_state() {
    const Circuit c = build_compiled_circuit(CircuitVariant::Margolus);
    return run_circuit_prefix(c, basis_state(5, 0), compiled_mod_exp_op_count());
}

OrderFindingResult run_order_finding(const ShorInstance& instance, CircuitVariant variant) {
    instance.validate();
    if (instance.n != 21 || instance.a != 4 || instance.n_bits != 3) {
        throw std::invalid_argument("run_order_finding: only the compiled N=21, a=4 instance is supported");
    }
    const Circuit c = build_compiled_circuit(variant);
    OrderFindingResult r;
    r.final_state = run_circuit(c, basis_state(5, 0));
    const std::vector<double> p = probabilities(r.final_state);
    const std::vector<int> controls{kC0, kC1, kC2};
    r.control_distribution = marginal(p, controls, 5);
    return r;
}

std::vector<double> ideal_control_distribution() {
    return run_order_finding(ShorInstance{}, CircuitVariant::Margolus).control_distribution;
}

namespace {

void lower_op(const Op& op, Circuit& out) {
    const auto& q = op.qubits;
    switch (op.gate.kind) {
        case GateKind::Toffoli: {
            // textbook 6-CX decomposition
            const int a = q[0], b = q[1], t = q[2];
            out.add(GateKind::H, {t});
            out.add(GateKind::CX, {b, t});
            out.add(GateKind::Tdag, {t});
            out.add(GateKind::CX, {a, t});
            out.add(GateKind::T, {t});
            out.add(GateKind::CX, {b, t});
            out.add(GateKind::Tdag, {t});
            out.add(GateKind::CX, {a, t});
            out.add(GateKind::T, {b});
            out.add(GateKind::T, {t});
            out.add(GateKind::H, {t});
            out.add(GateKind::CX, {a, b});
            out.add(GateKind::T, {a});
            out.add(GateKind::Tdag, {b});
            out.add(GateKind::CX, {a, b});
            return;
        }
        case GateKind::Margolus: {
            // 3-CX relative-phase construction
            const int a = q[0], b = q[1], t = q[2];
            out.add(GateKind::Ry, {t}, kPi / 4.0);
            out.add(GateKind::CX, {b, t});
            out.add(GateKind::Ry, {t}, kPi / 4.0);
            out.add(GateKind::CX, {a, t});
            out.add(GateKind::Ry, {t}, -kPi / 4.0);
            out.add(GateKind::CX, {b, t});
            out.add(GateKind::Ry, {t}, -kPi / 4.0);
            return;
        }
        case GateKind::Fredkin: {
            const int c = q[0], x = q[1], y = q[2];
            out.add(GateKind::CX, {y, x});
            lower_op(Op{Gate{GateKind::Toffoli, 0.0}, {c, x, y}}, out);
            out.add(GateKind::CX, {y, x});
            return;
        }
        case GateKind::Swap: {
            out.add(GateKind::CX, {q[0], q[1]});
            out.add(GateKind::CX, {q[1], q[0]});
            out.add(GateKind::CX, {q[0], q[1]});
            return;
        }
        default:
            out.ops.push_back(op);
    }
}

}  // namespace

Circuit lower_toffolis(const Circuit& circuit) {
    Circuit out(circuit.n_qubits);
    for (const Op& op : circuit.ops) lower_op(op, out);
    return out;
}

}  // namespace shor21::shor
