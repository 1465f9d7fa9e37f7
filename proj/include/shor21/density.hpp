#pragma once

#include <span>

#include <Eigen/Dense>

#include "shor21/qsim.hpp"

namespace shor21 {

struct DensityMatrix {
    Eigen::MatrixXcd m;
    int n_qubits = 0;

    std::size_t dim() const { return static_cast<std::size_t>(m.rows()); }
    // Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-8
    void validate() const;
};

DensityMatrix density_from_state(const StateVector& state);
DensityMatrix maximally_mixed(int n_qubits);

// reduced state over the kept qubits; keep must be sorted-unique-compatible
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), via Hermitian
// eigendecomposition with eigenvalues clamped at zero
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// half the L1 distance between two distributions on the same outcome space
double kolmogorov_distance(std::span<const double> p, std::span<const double> q);

DensityMatrix apply_gate_density(const DensityMatrix& rho, const Gate& gate, std::span<const int> targets);
DensityMatrix run_circuit_density(const Circuit& circuit, const DensityMatrix& initial);

// two-qubit depolarizing channel: rho -> (1-p) rho + p/15 sum_{PQ != II} PQ rho PQ
DensityMatrix depolarize_two_qubit(const DensityMatrix& rho, int qubit_a, int qubit_b, double rate);

// diagonal of rho in the computational basis
std::vector<double> density_probabilities(const DensityMatrix& rho);

}  // namespace shor21
