#include "shor21/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shor21/noise.hpp"
#include "shor21/pauli.hpp"
#include "shor21/rng.hpp"
#include "shor21/shor.hpp"

namespace shor21::tomo {

namespace {

const Eigen::Matrix2cd& rotation_for(char basis) {
    static const Eigen::Matrix2cd h = (Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    static const Eigen::Matrix2cd hsdg = [] {
        Eigen::Matrix2cd sdg;
        sdg << 1, 0, 0, cplx(0, -1);
        return Eigen::Matrix2cd(h * sdg);
    }();
    static const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    switch (basis) {
        case 'X': return h;
        case 'Y': return hsdg;
        case 'Z': return id;
    }
    throw std::invalid_argument("tomography basis must be X, Y or Z");
}

Eigen::MatrixXcd conjugate_single_qubit(const Eigen::MatrixXcd& m, const Eigen::Matrix2cd& u,
                                        int qubit, int n) {
    const std::uint32_t step = 1u << (n - 1 - qubit);
    const Eigen::Index d = m.rows();
    Eigen::MatrixXcd left = Eigen::MatrixXcd::Zero(d, d);
    for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(d); ++c) {
        for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(d); ++r) {
            if ((r & ~step) != (c & ~step)) continue;
            left(r, c) = u((r & step) ? 1 : 0, (c & step) ? 1 : 0);
        }
    }
    return left * m * left.adjoint();
}

std::vector<double> setting_probabilities_density(const DensityMatrix& rho,
                                                  const std::string& bases) {
    Eigen::MatrixXcd m = rho.m;
    for (int q = 0; q < rho.n_qubits; ++q) {
        if (bases[q] == 'Z') continue;
        m = conjugate_single_qubit(m, rotation_for(bases[q]), q, rho.n_qubits);
    }
    std::vector<double> p(rho.dim());
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = std::max(m(k, k).real(), 0.0);
        total += p[k];
    }
    for (double& v : p) v /= total;
    return p;
}

std::string pauli_code_to_string(std::uint32_t code, int n) {
    static const char letters[] = "IXYZ";
    std::string s(n, 'I');
    for (int i = n - 1; i >= 0; --i) {
        s[i] = letters[code & 3u];
        code >>= 2;
    }
    return s;
}

Eigen::MatrixXcd dense_pauli(const std::string& s) {
    const cplx i{0.0, 1.0};
    Eigen::Matrix2cd mats[4];
    mats[0] = Eigen::Matrix2cd::Identity();
    mats[1] << 0, 1, 1, 0;
    mats[2] << 0, -i, i, 0;
    mats[3] << 1, 0, 0, -1;
    auto index_of = [](char c) {
        switch (c) {
            case 'I': return 0;
            case 'X': return 1;
            case 'Y': return 2;
            default: return 3;
        }
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : s) {
        const Eigen::Matrix2cd& p = mats[index_of(c)];
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index cc = 0; cc < out.cols(); ++cc) {
                next.block<2, 2>(2 * r, 2 * cc) = out(r, cc) * p;
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

void TomographySetting::validate() const {
    for (char c : bases) {
        if (c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("TomographySetting: bases must be X, Y or Z");
        }
    }
}

std::vector<TomographySetting> tomography_settings(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("tomography_settings: need at least one qubit");
    std::vector<TomographySetting> out;
    const char letters[] = "XYZ";
    std::uint64_t total = 1;
    for (int i = 0; i < n_qubits; ++i) total *= 3;
    for (std::uint64_t k = 0; k < total; ++k) {
        std::string s(n_qubits, 'X');
        std::uint64_t v = k;
        for (int i = n_qubits - 1; i >= 0; --i) {
            s[i] = letters[v % 3];
            v /= 3;
        }
        out.push_back(TomographySetting{std::move(s)});
    }
    return out;
}

void TomographyDataset::validate() const {
    const auto settings = tomography_settings(n_qubits);
    if (per_setting.size() != settings.size()) {
        throw std::invalid_argument("TomographyDataset: expected all 3^n settings");
    }
    for (const auto& s : settings) {
        const auto it = per_setting.find(s.bases);
        if (it == per_setting.end()) {
            throw std::invalid_argument("TomographyDataset: missing setting " + s.bases);
        }
        it->second.validate();
        if (it->second.shots != shots) {
            throw std::invalid_argument("TomographyDataset: unequal shot totals");
        }
    }
}

std::map<std::string, std::vector<double>> exact_setting_probabilities(const DensityMatrix& rho) {
    rho.validate();
    std::map<std::string, std::vector<double>> out;
    for (const TomographySetting& s : tomography_settings(rho.n_qubits)) {
        out[s.bases] = setting_probabilities_density(rho, s.bases);
    }
    return out;
}

TomographyDataset simulate_tomography_serial(const DensityMatrix& rho, std::uint64_t shots,
                                             std::uint64_t seed) {
    rho.validate();
    TomographyDataset ds;
    ds.n_qubits = rho.n_qubits;
    ds.shots = shots;
    const auto settings = tomography_settings(rho.n_qubits);
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto p = setting_probabilities_density(rho, settings[k].bases);
        ds.per_setting[settings[k].bases] = noise::sample_counts(p, shots, derive_seed(seed, k));
    }
    return ds;
}

TomographyDataset simulate_tomography(const DensityMatrix& rho, std::uint64_t shots,
                                      std::uint64_t seed) {
    rho.validate();
    TomographyDataset ds;
    ds.n_qubits = rho.n_qubits;
    ds.shots = shots;
    const auto settings = tomography_settings(rho.n_qubits);
    std::vector<CountsVector> slots(settings.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(settings.size()); ++k) {
        const auto p = setting_probabilities_density(rho, settings[k].bases);
        slots[k] = noise::sample_counts(p, shots, derive_seed(seed, static_cast<std::uint64_t>(k)));
    }
    for (std::size_t k = 0; k < settings.size(); ++k) {
        ds.per_setting[settings[k].bases] = std::move(slots[k]);
    }
    return ds;
}

DensityMatrix project_to_density(const Eigen::MatrixXcd& hermitian, int n_qubits) {
    const Eigen::MatrixXcd sym = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    Eigen::VectorXd ev = es.eigenvalues();

    // project the spectrum onto the probability simplex
    std::vector<double> sorted(ev.data(), ev.data() + ev.size());
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumsum = 0.0;
    double theta = 0.0;
    int k = 0;
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
        cumsum += sorted[i];
        const double t = (1.0 - cumsum) / static_cast<double>(i + 1);
        if (sorted[i] + t > 0.0) {
            theta = t;
            k = i + 1;
        }
    }
    (void)k;
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i) + theta, 0.0);

    DensityMatrix out;
    out.n_qubits = n_qubits;
    out.m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    // exact Hermiticity by construction up to rounding
    out.m = 0.5 * (out.m + out.m.adjoint()).eval();
    return out;
}

DensityMatrix reconstruct_from_probabilities(
    const std::map<std::string, std::vector<double>>& per_setting, int n_qubits) {
    const auto settings = tomography_settings(n_qubits);
    for (const auto& s : settings) {
        if (!per_setting.count(s.bases)) {
            throw std::invalid_argument("reconstruct: missing setting " + s.bases);
        }
    }
    const Eigen::Index d = 1ll << n_qubits;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(d, d);  // <I..I> = 1

    const std::uint32_t n_strings = 1u << (2 * n_qubits);
    for (std::uint32_t code = 1; code < n_strings; ++code) {
        const std::string s = pauli_code_to_string(code, n_qubits);
        if (s.find_first_not_of('I') == std::string::npos) continue;
        const pauli::PauliString target(s);
        double sum = 0.0;
        int used = 0;
        for (const auto& setting : settings) {
            const pauli::PauliString full(setting.bases);
            if (!pauli::is_derivable_or_equal(target, full)) continue;
            sum += pauli::expectation_from_probs(per_setting.at(setting.bases), target, full);
            ++used;
        }
        if (used == 0) continue;
        acc += (sum / static_cast<double>(used)) * dense_pauli(s);
    }
    acc /= static_cast<double>(d);
    return project_to_density(acc, n_qubits);
}

DensityMatrix reconstruct(const TomographyDataset& dataset) {
    dataset.validate();
    std::map<std::string, std::vector<double>> probs;
    for (const auto& [bases, counts] : dataset.per_setting) {
        probs[bases] = counts.probabilities();
    }
    return reconstruct_from_probabilities(probs, dataset.n_qubits);
}

TomographyScore score_against_ideal(const DensityMatrix& rho_hat, const DensityMatrix& ideal) {
    if (rho_hat.m.rows() != ideal.m.rows()) {
        throw std::invalid_argument("score_against_ideal: dimension mismatch");
    }
    TomographyScore score;
    score.fidelity = fidelity(rho_hat, ideal);
    score.re = rho_hat.m.real();
    score.im = rho_hat.m.imag();
    score.max_abs_imag_ideal = ideal.m.imag().cwiseAbs().maxCoeff();
    return score;
}

DensityMatrix ideal_control_state() {
    const auto result = shor::run_order_finding(shor::ShorInstance{}, shor::CircuitVariant::Margolus);
    const DensityMatrix rho5 = density_from_state(result.final_state);
    const std::vector<int> controls{0, 1, 2};
    return partial_trace(rho5, controls);
}

}  // namespace shor21::tomo
