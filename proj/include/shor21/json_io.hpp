#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "shor21/density.hpp"
#include "shor21/noise.hpp"
#include "shor21/number_theory.hpp"
#include "shor21/qsim.hpp"
#include "shor21/relphase.hpp"
#include "shor21/tomography.hpp"
#include "shor21/witness.hpp"

namespace shor21::io {

using json = nlohmann::json;

// {"dim": k, "re": [...], "im": [...]}; matrices are row-major
json statevector_to_json(const StateVector& state);
StateVector statevector_from_json(const json& j);
json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

// [{"gate": "CX", "qubits": [2, 4]}, ...]; parametric gates carry "params"
json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const json& j);

json certificate_to_json(const relphase::SubstitutionCertificate& cert);
json pipeline_report_to_json(const nt::PipelineReport& report);

struct WitnessReport {
    double alpha = 0.0;
    double overlap = 0.0;
    double witness_trace = 0.0;
    double margin = 0.0;
    std::vector<witness::BipartitionVerdict> verdicts;
    std::vector<std::string> settings;  // reference spelling, ascending
};

json witness_report_to_json(const WitnessReport& report);

struct TomographyReport {
    tomo::TomographyScore score;
    DensityMatrix rho_hat;
    DensityMatrix ideal;
    std::uint64_t shots = 0;
    bool exact = false;
};

json tomography_report_to_json(const TomographyReport& report);

// {"readout": [{"p01": ..., "p10": ...} x k], "cx_depolarizing": rate}
noise::NoiseConfig noise_config_from_json(const json& j);
noise::NoiseConfig load_noise_config(const std::filesystem::path& path);

// writes via a temporary file and rename, so partial output never appears
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace shor21::io
