#include "shor21/density.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace shor21 {

void DensityMatrix::validate() const {
    if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
    if (m.rows() != static_cast<Eigen::Index>(std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("density matrix dimension does not match qubit count");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kNormTol) {
        throw std::invalid_argument("density matrix is not Hermitian within 1e-10");
    }
    if (std::abs(m.trace().real() - 1.0) > kNormTol || std::abs(m.trace().imag()) > kNormTol) {
        throw std::invalid_argument("density matrix trace is not 1 within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw std::invalid_argument("density matrix has an eigenvalue below -1e-8");
    }
}

DensityMatrix density_from_state(const StateVector& state) {
    const Eigen::Index d = static_cast<Eigen::Index>(state.amp.size());
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = state.amp[i];
    DensityMatrix rho;
    rho.n_qubits = state.n_qubits;
    rho.m = v * v.adjoint();
    return rho;
}

DensityMatrix maximally_mixed(int n_qubits) {
    const Eigen::Index d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    DensityMatrix rho;
    rho.n_qubits = n_qubits;
    rho.m = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    return rho;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    const int n = rho.n_qubits;
    std::set<int> seen;
    for (int q : keep) {
        if (q < 0 || q >= n) throw std::out_of_range("partial_trace: qubit out of range");
        if (!seen.insert(q).second) throw std::invalid_argument("partial_trace: duplicate qubit");
    }
    std::vector<int> traced;
    for (int q = 0; q < n; ++q) {
        if (!seen.count(q)) traced.push_back(q);
    }
    const int k = static_cast<int>(keep.size());
    const int t = static_cast<int>(traced.size());
    DensityMatrix out;
    out.n_qubits = k;
    out.m = Eigen::MatrixXcd::Zero(1 << k, 1 << k);

    auto full_index = [&](std::uint32_t kept_bits, std::uint32_t traced_bits) {
        std::uint32_t idx = 0;
        for (int j = 0; j < k; ++j) {
            if ((kept_bits >> (k - 1 - j)) & 1u) idx |= (1u << (n - 1 - keep[j]));
        }
        for (int j = 0; j < t; ++j) {
            if ((traced_bits >> (t - 1 - j)) & 1u) idx |= (1u << (n - 1 - traced[j]));
        }
        return idx;
    };

    for (std::uint32_t r = 0; r < (1u << k); ++r) {
        for (std::uint32_t c = 0; c < (1u << k); ++c) {
            cplx acc{0.0, 0.0};
            for (std::uint32_t w = 0; w < (1u << t); ++w) {
                acc += rho.m(full_index(r, w), full_index(c, w));
            }
            out.m(r, c) = acc;
        }
    }
    return out;
}

namespace {

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.m.rows() != sigma.m.rows()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    rho.validate();
    sigma.validate();
    const Eigen::MatrixXcd sr = hermitian_sqrt(rho.m);
    const Eigen::MatrixXcd inner = sr * sigma.m * sr;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner, Eigen::EigenvaluesOnly);
    double f = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        f += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
    }
    return std::clamp(f, 0.0, 1.0);
}

double kolmogorov_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("kolmogorov_distance: mismatched outcome spaces");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

DensityMatrix apply_gate_density(const DensityMatrix& rho, const Gate& gate, std::span<const int> targets) {
    validate_targets(rho.n_qubits, gate, targets);
    const int n = rho.n_qubits;
    const int a = static_cast<int>(targets.size());
    const Eigen::Index d = rho.m.rows();
    const Eigen::MatrixXcd small = gate_matrix(gate);

    // embed the gate on its targets, then conjugate
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
    std::uint32_t clear_mask = 0;
    for (int q : targets) clear_mask |= (1u << (n - 1 - q));
    for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(d); ++idx) {
        std::uint32_t loc = 0;
        for (int j = 0; j < a; ++j) loc = (loc << 1) | static_cast<std::uint32_t>(qubit_bit(idx, targets[j], n));
        const std::uint32_t base = idx & ~clear_mask;
        for (std::uint32_t loc2 = 0; loc2 < (1u << a); ++loc2) {
            std::uint32_t idx2 = base;
            for (int j = 0; j < a; ++j) {
                if ((loc2 >> (a - 1 - j)) & 1u) idx2 |= (1u << (n - 1 - targets[j]));
            }
            u(idx2, idx) = small(loc2, loc);
        }
    }
    DensityMatrix out;
    out.n_qubits = n;
    out.m = u * rho.m * u.adjoint();
    return out;
}

DensityMatrix run_circuit_density(const Circuit& circuit, const DensityMatrix& initial) {
    if (initial.n_qubits != circuit.n_qubits) {
        throw std::invalid_argument("run_circuit_density: qubit count mismatch");
    }
    DensityMatrix rho = initial;
    for (const Op& op : circuit.ops) rho = apply_gate_density(rho, op.gate, op.qubits);
    return rho;
}

DensityMatrix depolarize_two_qubit(const DensityMatrix& rho, int qubit_a, int qubit_b, double rate) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("depolarize: rate outside [0,1]");
    const int n = rho.n_qubits;
    if (qubit_a == qubit_b || qubit_a < 0 || qubit_b < 0 || qubit_a >= n || qubit_b >= n) {
        throw std::invalid_argument("depolarize: bad qubit pair");
    }
    const cplx i{0.0, 1.0};
    Eigen::Matrix2cd paulis[4];
    paulis[0] = Eigen::Matrix2cd::Identity();
    paulis[1] << 0, 1, 1, 0;
    paulis[2] << 0, -i, i, 0;
    paulis[3] << 1, 0, 0, -1;

    auto conj_1q = [&](const Eigen::MatrixXcd& m, const Eigen::Matrix2cd& u, int qubit) {
        const std::uint32_t step = 1u << (n - 1 - qubit);
        const Eigen::Index d = m.rows();
        Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(d, d);
        for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(d); ++c) {
            for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(d); ++r) {
                if ((r & ~step) != (c & ~step)) continue;
                left(r, c) = u((r & step) ? 1 : 0, (c & step) ? 1 : 0);
            }
        }
        return Eigen::MatrixXcd(left * m * left.adjoint());
    };

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.m.rows(), rho.m.cols());
    for (int pa = 0; pa < 4; ++pa) {
        for (int pb = 0; pb < 4; ++pb) {
            if (pa == 0 && pb == 0) continue;
            Eigen::MatrixXcd t = conj_1q(rho.m, paulis[pa], qubit_a);
            t = conj_1q(t, paulis[pb], qubit_b);
            acc += t;
        }
    }
    DensityMatrix out;
    out.n_qubits = n;
    out.m = (1.0 - rate) * rho.m + (rate / 15.0) * acc;
    return out;
}

std::vector<double> density_probabilities(const DensityMatrix& rho) {
    std::vector<double> p(rho.dim());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = rho.m(k, k).real();
    return p;
}

}  // namespace shor21
