// Batch experiment runner for the compiled N=21 order-finding toolkit.
// Every subcommand is deterministic for a fixed --seed; all file output is
// written atomically (temp file + rename).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shor21/bootstrap.hpp"
#include "shor21/density.hpp"
#include "shor21/json_io.hpp"
#include "shor21/noise.hpp"
#include "shor21/number_theory.hpp"
#include "shor21/pauli.hpp"
#include "shor21/relphase.hpp"
#include "shor21/rng.hpp"
#include "shor21/shor.hpp"
#include "shor21/tomography.hpp"
#include "shor21/witness.hpp"

using namespace shor21;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainFailure = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    std::string variant = "margolus";
    std::string noise_path;
    std::string out_path;
    std::string format = "json";
    bool exact = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_variant = true) {
    cmd->add_option("--shots", opt.shots, "measurement shots")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "master seed; all RNG streams derive from it");
    if (with_variant) {
        cmd->add_option("--variant", opt.variant, "circuit variant")
            ->check(CLI::IsMember({"full", "margolus"}));
    }
    cmd->add_option("--noise", opt.noise_path, "noise config JSON path")->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out_path, "output file path");
    cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--exact", opt.exact, "use exact probabilities, no sampling");
}

shor::CircuitVariant variant_of(const CommonOptions& opt) {
    return opt.variant == "full" ? shor::CircuitVariant::FullToffoli
                                 : shor::CircuitVariant::Margolus;
}

noise::NoiseConfig load_noise(const CommonOptions& opt) {
    if (opt.noise_path.empty()) return {};
    return io::load_noise_config(opt.noise_path);
}

void emit(const CommonOptions& opt, const std::string& contents) {
    if (opt.out_path.empty()) {
        std::cout << contents;
        if (!contents.empty() && contents.back() != '\n') std::cout << "\n";
    } else {
        io::write_file_atomic(opt.out_path, contents);
        std::cout << "wrote " << opt.out_path << "\n";
    }
}

void print_histogram(std::ostream& os, const std::vector<double>& dist, int n_bits,
                     const std::string& header) {
    constexpr int kMaxColumns = 60;
    double peak = 0.0;
    for (double p : dist) peak = std::max(peak, p);
    os << header << "\n";
    for (std::uint32_t i = 0; i < dist.size(); ++i) {
        const int bars =
            peak > 0.0 ? static_cast<int>(std::lround(dist[i] / peak * kMaxColumns)) : 0;
        os << bitstring_of(i, n_bits) << "  " << std::string(bars, '#');
        char buf[32];
        std::snprintf(buf, sizeof(buf), "  %.6f", dist[i]);
        os << buf << "\n";
    }
}

// control-register distribution under the configured noise
std::vector<double> noisy_control_distribution(const CommonOptions& opt,
                                               const noise::NoiseConfig& cfg) {
    std::vector<double> dist;
    if (cfg.cx_depolarizing > 0.0) {
        const auto rho =
            noise::run_with_depolarizing(shor::build_compiled_circuit(variant_of(opt)),
                                         cfg.cx_depolarizing);
        const std::vector<int> controls{0, 1, 2};
        dist = marginal(density_probabilities(rho), controls, 5);
    } else {
        dist = shor::run_order_finding(shor::ShorInstance{}, variant_of(opt)).control_distribution;
    }
    if (!cfg.readout.qubits.empty()) {
        if (cfg.readout.qubits.size() != 3) {
            throw std::invalid_argument(
                "simulate/factor need a 3-qubit readout model (control register)");
        }
        dist = noise::apply_readout_noise(dist, cfg.readout);
    }
    return dist;
}

int cmd_simulate(const CommonOptions& opt) {
    const auto cfg = load_noise(opt);
    const auto dist = noisy_control_distribution(opt, cfg);

    if (opt.exact) {
        print_histogram(std::cout, dist, 3, "exact control-register distribution");
        if (opt.format == "csv") {
            std::ostringstream ss;
            for (std::uint32_t i = 0; i < dist.size(); ++i) {
                ss << bitstring_of(i, 3) << "," << dist[i] << "\n";
            }
            emit(opt, ss.str());
        } else {
            json j;
            for (std::uint32_t i = 0; i < dist.size(); ++i) j[bitstring_of(i, 3)] = dist[i];
            emit(opt, json{{"distribution", j}, {"variant", opt.variant}}.dump(2) + "\n");
        }
        return kExitOk;
    }

    const CountsVector counts = noise::sample_counts(dist, opt.shots, opt.seed);
    print_histogram(std::cout, counts.probabilities(), 3,
                    "sampled counts (" + std::to_string(opt.shots) + " shots)");
    if (opt.format == "csv") {
        std::ostringstream ss;
        write_counts_csv(ss, counts);
        emit(opt, ss.str());
    } else {
        json j;
        for (const auto& [bits, c] : counts.counts) j[bits] = c;
        emit(opt, json{{"counts", j}, {"shots", counts.shots}, {"variant", opt.variant}}.dump(2) +
                      "\n");
    }
    return kExitOk;
}

int cmd_factor(const CommonOptions& opt, const std::string& counts_path) {
    CountsVector counts;
    if (!counts_path.empty()) {
        std::ifstream in(counts_path);
        if (!in) throw std::invalid_argument("cannot open counts file: " + counts_path);
        counts = read_counts_csv(in);
    } else {
        const auto cfg = load_noise(opt);
        const auto dist = noisy_control_distribution(opt, cfg);
        if (opt.exact) {
            // exact path: weight outcomes by their exact probabilities
            std::vector<std::uint64_t> dense(8);
            for (int i = 0; i < 8; ++i) {
                dense[i] = static_cast<std::uint64_t>(std::llround(dist[i] * 1e9));
            }
            counts = CountsVector::from_dense(dense, 3);
        } else {
            counts = noise::sample_counts(dist, opt.shots, opt.seed);
        }
    }

    const auto report = nt::shor_pipeline(counts, shor::ShorInstance{});
    std::cout << "outcome      count  order  factors\n";
    for (const auto& o : report.outcomes) {
        const std::string order = o.order ? std::to_string(*o.order) : "-";
        const std::string factors =
            o.factors ? std::to_string(o.factors->first) + " x " + std::to_string(o.factors->second)
                      : "-";
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s    %10llu  %-5s  %s\n", o.bits.c_str(),
                      static_cast<unsigned long long>(o.count), order.c_str(), factors.c_str());
        std::cout << buf;
    }
    std::cout << "success fraction: " << report.success_fraction << "\n";
    if (report.factors) {
        std::cout << "factors of 21: " << report.factors->first << " and " << report.factors->second
                  << "\n";
    } else {
        std::cout << "no outcome yielded factors\n";
    }
    if (!opt.out_path.empty()) {
        emit(opt, io::pipeline_report_to_json(report).dump(2) + "\n");
    }
    return report.factors ? kExitOk : kExitDomainFailure;
}

int cmd_verify_relphase(const CommonOptions& opt, bool inject_101) {
    relphase::SubstitutionCertificate cert;
    if (inject_101) {
        const auto [full, rel] = relphase::inject_101_circuits();
        cert = relphase::verify_substitution(full, rel);
    } else {
        cert = relphase::verify_substitution(
            shor::build_compiled_circuit(shor::CircuitVariant::FullToffoli),
            shor::build_compiled_circuit(shor::CircuitVariant::Margolus));
    }
    std::cout << "gate  qubits (a,b,t)   |101> weight      max |amp|\n";
    for (std::size_t k = 0; k < cert.records.size(); ++k) {
        const auto& rec = cert.records[k];
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%4zu  op %2zu (%d,%d,%d)    %.3e        %.3e\n", k,
                      rec.op_index, rec.qubits[0], rec.qubits[1], rec.qubits[2],
                      rec.pattern_probability, rec.max_pattern_amplitude);
        std::cout << buf;
    }
    std::cout << "final deviation (up to global phase): " << cert.final_deviation << "\n";
    std::cout << "verdict: " << (cert.safe ? "safe" : "unsafe") << "\n";
    emit(opt, io::certificate_to_json(cert).dump(2) + "\n");
    return cert.safe ? kExitOk : kExitDomainFailure;
}

int cmd_witness(const CommonOptions& opt) {
    const auto cfg = load_noise(opt);
    if (!cfg.readout.qubits.empty() && cfg.readout.qubits.size() != 5) {
        throw std::invalid_argument("witness needs a 5-qubit readout model");
    }
    const StateVector psi = shor::ideal_pre_qft_state();
    const auto terms = pauli::pauli_decompose(psi);
    std::set<pauli::PauliString> sd;
    for (const auto& t : terms) {
        if (!t.string.is_identity()) sd.insert(t.string);
    }
    const auto settings = pauli::minimal_settings(sd);

    // measure each minimal setting, derive every covered expectation
    std::map<pauli::PauliString, double> expectations;
    std::size_t stream = 0;
    for (const auto& setting : settings) {
        std::vector<double> probs = pauli::setting_probabilities(psi, setting);
        if (!cfg.readout.qubits.empty()) probs = noise::apply_readout_noise(probs, cfg.readout);
        if (!opt.exact) {
            const CountsVector counts =
                noise::sample_counts(probs, opt.shots, derive_seed(opt.seed, stream++));
            probs = counts.probabilities();
        }
        for (const auto& target : sd) {
            if (pauli::is_derivable_or_equal(target, setting)) {
                expectations[target] = pauli::expectation_from_probs(probs, target, setting);
            }
        }
    }

    const double overlap = pauli::overlap_from_expectations(expectations, terms);
    const double alpha = witness::max_bipartite_overlap(psi);
    witness::WitnessSpec spec{alpha, psi};

    io::WitnessReport report;
    report.alpha = alpha;
    report.overlap = overlap;
    report.witness_trace = witness::witness_value(spec, overlap);
    report.margin = witness::kCertificationMargin;
    report.verdicts = witness::certify_bipartite_entanglement(std::clamp(overlap, 0.0, 1.0), psi);
    for (const auto& s : settings) report.settings.push_back(s.reference_spelling());
    std::sort(report.settings.begin(), report.settings.end());

    std::cout << "alpha = " << alpha << ", overlap = " << overlap
              << ", tr(W rho) = " << report.witness_trace << "\n";
    std::cout << "bipartition          beta     entangled\n";
    for (const auto& v : report.verdicts) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%-20s %.4f   %s\n", v.bipartition.name(5).c_str(), v.beta,
                      v.entangled ? "yes" : "no");
        std::cout << buf;
    }
    std::cout << report.settings.size() << " measurement settings\n";
    emit(opt, io::witness_report_to_json(report).dump(2) + "\n");
    return kExitOk;
}

int cmd_tomography(const CommonOptions& opt, const std::string& data_dir) {
    const auto cfg = load_noise(opt);
    if (!cfg.readout.qubits.empty() && cfg.readout.qubits.size() != 3) {
        throw std::invalid_argument("tomography needs a 3-qubit readout model");
    }
    const DensityMatrix ideal = tomo::ideal_control_state();

    DensityMatrix hat;
    if (opt.exact && cfg.readout.qubits.empty()) {
        hat = tomo::reconstruct_from_probabilities(tomo::exact_setting_probabilities(ideal), 3);
    } else {
        std::map<std::string, std::vector<double>> probs =
            tomo::exact_setting_probabilities(ideal);
        if (!cfg.readout.qubits.empty()) {
            for (auto& [bases, p] : probs) p = noise::apply_readout_noise(p, cfg.readout);
        }
        if (opt.exact) {
            hat = tomo::reconstruct_from_probabilities(probs, 3);
        } else {
            tomo::TomographyDataset ds;
            ds.n_qubits = 3;
            ds.shots = opt.shots;
            std::size_t stream = 0;
            for (const auto& [bases, p] : probs) {
                ds.per_setting[bases] =
                    noise::sample_counts(p, opt.shots, derive_seed(opt.seed, stream++));
            }
            if (!data_dir.empty()) {
                std::filesystem::create_directories(data_dir);
                for (const auto& [bases, counts] : ds.per_setting) {
                    std::ostringstream ss;
                    write_counts_csv(ss, counts);
                    io::write_file_atomic(std::filesystem::path(data_dir) / (bases + ".csv"),
                                          ss.str());
                }
            }
            hat = tomo::reconstruct(ds);
        }
    }

    io::TomographyReport report;
    report.score = tomo::score_against_ideal(hat, ideal);
    report.rho_hat = hat;
    report.ideal = ideal;
    report.shots = opt.exact ? 0 : opt.shots;
    report.exact = opt.exact;

    std::cout << "fidelity(rho_hat, rho_ideal) = " << report.score.fidelity << "\n";
    std::cout << "Re(rho_hat):\n" << report.score.re << "\n";
    std::cout << "Im(rho_hat):\n" << report.score.im << "\n";
    std::cout << "max |Im(rho_ideal)| = " << report.score.max_abs_imag_ideal << "\n";
    emit(opt, io::tomography_report_to_json(report).dump(2) + "\n");
    return kExitOk;
}

int cmd_mitigate_demo(const CommonOptions& opt, double rate) {
    const auto ideal = shor::ideal_control_distribution();
    const auto model = noise::ReadoutNoiseModel::symmetric(3, rate);
    const auto cal = noise::build_calibration_matrix(model);
    const auto noisy_probs = noise::apply_readout_noise(ideal, model);
    const CountsVector noisy = noise::sample_counts(noisy_probs, opt.shots, opt.seed);
    const auto mitigated = noise::mitigate(noisy, cal);
    std::vector<double> mit(8);
    for (int i = 0; i < 8; ++i) mit[i] = mitigated[i] / static_cast<double>(opt.shots);

    print_histogram(std::cout, ideal, 3, "ideal");
    print_histogram(std::cout, noisy.probabilities(), 3,
                    "noisy (" + std::to_string(rate) + " symmetric readout)");
    print_histogram(std::cout, mit, 3, "mitigated");
    const double d_noisy = kolmogorov_distance(noisy.probabilities(), ideal);
    const double d_mit = kolmogorov_distance(mit, ideal);
    std::cout << "D(noisy, ideal) = " << d_noisy << ", D(mitigated, ideal) = " << d_mit << "\n";

    json j;
    j["rate"] = rate;
    j["shots"] = opt.shots;
    j["d_noisy"] = d_noisy;
    j["d_mitigated"] = d_mit;
    json jm = json::array();
    for (double v : mitigated) jm.push_back(v);
    j["mitigated_counts"] = jm;
    emit(opt, j.dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compiled N=21 quantum order-finding toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string counts_path, data_dir;
    bool inject_101 = false;
    double demo_rate = 0.03;

    auto* simulate = app.add_subcommand("simulate", "run the compiled circuit, sample counts");
    add_common(simulate, opt);

    auto* factor = app.add_subcommand("factor", "order finding plus continued-fractions factoring");
    add_common(factor, opt);
    factor->add_option("--counts", counts_path, "use counts from a CSV file instead of sampling")
        ->check(CLI::ExistingFile);

    auto* verify = app.add_subcommand("verify-relphase", "certify the Toffoli -> Margolus substitution");
    add_common(verify, opt, /*with_variant=*/false);
    verify->add_flag("--inject-101", inject_101, "verify a circuit that does reach |101>");

    auto* witness_cmd = app.add_subcommand("witness", "entanglement witness and bipartition analysis");
    add_common(witness_cmd, opt, /*with_variant=*/false);

    auto* tomography = app.add_subcommand("tomography", "control-register state tomography");
    add_common(tomography, opt, /*with_variant=*/false);
    tomography->add_option("--data-dir", data_dir, "write per-setting counts CSVs here");

    auto* demo = app.add_subcommand("mitigate-demo", "degrade with readout noise, then mitigate");
    add_common(demo, opt, /*with_variant=*/false);
    demo->add_option("--rate", demo_rate, "symmetric readout error rate")
        ->check(CLI::Range(0.0, 0.49));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(opt);
        if (factor->parsed()) return cmd_factor(opt, counts_path);
        if (verify->parsed()) return cmd_verify_relphase(opt, inject_101);
        if (witness_cmd->parsed()) return cmd_witness(opt);
        if (tomography->parsed()) return cmd_tomography(opt, data_dir);
        if (demo->parsed()) return cmd_mitigate_demo(opt, demo_rate);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainFailure;
    }
    return kExitUsage;
}
