#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shor21/counts.hpp"
#include "shor21/density.hpp"

namespace shor21::tomo {

struct TomographySetting {
    std::string bases;  // length-n string over {X, Y, Z}

    void validate() const;
};

// all 3^n settings, lexicographic (X < Y < Z)
std::vector<TomographySetting> tomography_settings(int n_qubits);

struct TomographyDataset {
    int n_qubits = 0;
    std::uint64_t shots = 0;
    std::map<std::string, CountsVector> per_setting;

    void validate() const;  // all settings present, equal shots
};

// exact Born probabilities in each rotated basis (infinite-shot limit)
std::map<std::string, std::vector<double>> exact_setting_probabilities(const DensityMatrix& rho);

// per setting: exact probabilities, multinomially sampled with a derived seed
TomographyDataset simulate_tomography(const DensityMatrix& rho, std::uint64_t shots,
                                      std::uint64_t seed);
TomographyDataset simulate_tomography_serial(const DensityMatrix& rho, std::uint64_t shots,
                                             std::uint64_t seed);

// Linear inversion from every derivable Pauli expectation (averaged over all
// compatible settings), then projection to the nearest unit-trace PSD matrix
// in Frobenius norm (spectrum projected onto the probability simplex).
DensityMatrix reconstruct(const TomographyDataset& dataset);
DensityMatrix reconstruct_from_probabilities(
    const std::map<std::string, std::vector<double>>& per_setting, int n_qubits);

DensityMatrix project_to_density(const Eigen::MatrixXcd& hermitian, int n_qubits);

struct TomographyScore {
    double fidelity = 0.0;
    Eigen::MatrixXd re;            // Re(rho_hat)
    Eigen::MatrixXd im;            // Im(rho_hat)
    double max_abs_imag_ideal = 0.0;
};

TomographyScore score_against_ideal(const DensityMatrix& rho_hat, const DensityMatrix& ideal);

// the ideal control-register state: partial trace of the exact compiled-circuit
// output over the work qubits
DensityMatrix ideal_control_state();

}  // namespace shor21::tomo
