#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "shor21/counts.hpp"
#include "shor21/density.hpp"
#include "shor21/qsim.hpp"

namespace shor21::noise {

struct QubitReadout {
    double p01 = 0.0;  // P(read 1 | prepared 0)
    double p10 = 0.0;  // P(read 0 | prepared 1)
};

struct ReadoutNoiseModel {
    std::vector<QubitReadout> qubits;

    void validate() const;
    static ReadoutNoiseModel symmetric(int n_qubits, double rate);
};

// column-stochastic map from ideal to noisy count vectors
struct CalibrationMatrix {
    Eigen::MatrixXd m;
    int n_bits = 0;

    void validate() const;  // columns sum to 1 within 1e-10, entries in [0,1]
};

// multinomial draw, deterministic for a fixed seed
CountsVector sample_counts(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed);

// M . dist for the tensor product of the per-qubit confusion matrices
std::vector<double> apply_readout_noise(std::span<const double> dist, const ReadoutNoiseModel& model);

// exact calibration matrix of a tensor-product readout model
CalibrationMatrix build_calibration_matrix(const ReadoutNoiseModel& model);
// estimated from measured basis-state preparations (column j = preparation j)
CalibrationMatrix build_calibration_matrix(const std::vector<CountsVector>& preparations);

// least-squares mitigation constrained to the probability simplex; returns
// real-valued mitigated counts (argmin_x ||M x - C/shots||, x >= 0, sum x = 1,
// scaled by shots). Ill-conditioned matrices are rejected with the condition
// number in the message.
std::vector<double> mitigate(const CountsVector& noisy, const CalibrationMatrix& m);

double condition_number(const CalibrationMatrix& m);

// density-matrix path: lower the circuit to {1q, CX, CPhase} and apply a
// two-qubit depolarizing channel after every two-qubit gate
DensityMatrix run_with_depolarizing(const Circuit& circuit, double cx_rate);

struct NoiseConfig {
    ReadoutNoiseModel readout;     // empty = no readout noise
    double cx_depolarizing = 0.0;  // 0 = no gate noise
};

}  // namespace shor21::noise
