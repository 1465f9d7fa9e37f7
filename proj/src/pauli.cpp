#include "shor21/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace shor21::pauli {

namespace {

constexpr double kDropTol = 1e-12;

const Eigen::Matrix2cd& pauli_matrix(char letter) {
    static const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
    static const Eigen::Matrix2cd X = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    static const Eigen::Matrix2cd Y =
        (Eigen::Matrix2cd() << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)).finished();
    static const Eigen::Matrix2cd Z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    switch (letter) {
        case 'I': return I;
        case 'X': return X;
        case 'Y': return Y;
        case 'Z': return Z;
    }
    throw std::invalid_argument("pauli_matrix: bad letter");
}

std::string index_to_string(std::uint32_t code, int n) {
    // base-4 digits in IXYZ order, qubit 0 first
    static const char letters[] = "IXYZ";
    std::string s(n, 'I');
    for (int i = n - 1; i >= 0; --i) {
        s[i] = letters[code & 3u];
        code >>= 2;
    }
    return s;
}

}  // namespace

PauliString::PauliString(std::string s) : letters(std::move(s)) {
    for (char c : letters) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("PauliString: letters must be I, X, Y or Z");
        }
    }
}

int PauliString::weight() const {
    int w = 0;
    for (char c : letters) {
        if (c != 'I') ++w;
    }
    return w;
}

double pauli_expectation(const StateVector& state, const PauliString& s) {
    if (s.size() != state.n_qubits) {
        throw std::invalid_argument("pauli_expectation: string length mismatch");
    }
    StateVector phi = state;
    for (int q = 0; q < s.size(); ++q) {
        if (s.letters[q] == 'I') continue;
        phi = apply_single_qubit(phi, pauli_matrix(s.letters[q]), q);
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < state.amp.size(); ++i) acc += std::conj(state.amp[i]) * phi.amp[i];
    return acc.real();
}

std::vector<PauliTerm> pauli_decompose_serial(const StateVector& state) {
    if (!state.is_normalized()) {
        throw std::invalid_argument("pauli_decompose: state is not normalized");
    }
    const int n = state.n_qubits;
    const std::uint32_t count = 1u << (2 * n);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);
    std::vector<PauliTerm> out;
    for (std::uint32_t code = 0; code < count; ++code) {
        const PauliString s(index_to_string(code, n));
        const double c = pauli_expectation(state, s) * scale;
        if (std::abs(c) >= kDropTol) out.push_back(PauliTerm{s, c});
    }
    return out;
}

std::vector<PauliTerm> pauli_decompose(const StateVector& state) {
    if (!state.is_normalized()) {
        throw std::invalid_argument("pauli_decompose: state is not normalized");
    }
    const int n = state.n_qubits;
    const std::uint32_t count = 1u << (2 * n);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);
    std::vector<double> coeffs(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t code = 0; code < static_cast<std::int64_t>(count); ++code) {
        const PauliString s(index_to_string(static_cast<std::uint32_t>(code), n));
        coeffs[static_cast<std::size_t>(code)] = pauli_expectation(state, s) * scale;
    }
    std::vector<PauliTerm> out;
    for (std::uint32_t code = 0; code < count; ++code) {
        if (std::abs(coeffs[code]) >= kDropTol) {
            out.push_back(PauliTerm{PauliString(index_to_string(code, n)), coeffs[code]});
        }
    }
    return out;
}

std::set<PauliString> derivable_from(const PauliString& setting) {
    std::vector<int> pos;
    for (int i = 0; i < setting.size(); ++i) {
        if (setting.letters[i] != 'I') pos.push_back(i);
    }
    std::set<PauliString> out;
    const std::uint32_t subsets = 1u << pos.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        std::string t = setting.letters;
        for (std::size_t j = 0; j < pos.size(); ++j) {
            if ((mask >> j) & 1u) t[pos[j]] = 'I';
        }
        PauliString p(t);
        if (!p.is_identity()) out.insert(std::move(p));
    }
    return out;
}

std::set<PauliString> minimal_settings(const std::set<PauliString>& terms) {
    std::set<PauliString> derived;
    for (const PauliString& t : terms) {
        if (t.is_identity()) {
            throw std::invalid_argument("minimal_settings: all-I term must be excluded");
        }
        const auto d = derivable_from(t);
        derived.insert(d.begin(), d.end());
    }
    std::set<PauliString> out;
    for (const PauliString& t : terms) {
        if (!derived.count(t)) out.insert(t);
    }
    return out;
}

bool is_derivable_or_equal(const PauliString& target, const PauliString& setting) {
    if (target.size() != setting.size()) return false;
    for (int i = 0; i < target.size(); ++i) {
        if (target.letters[i] != 'I' && target.letters[i] != setting.letters[i]) return false;
    }
    return true;
}

double expectation_from_probs(std::span<const double> probs, const PauliString& target,
                              const PauliString& setting) {
    if (!is_derivable_or_equal(target, setting)) {
        throw std::invalid_argument("expectation: target " + target.letters +
                                    " is not derivable from setting " + setting.letters);
    }
    const int n = target.size();
    if (probs.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("expectation: probability vector size mismatch");
    }
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
        if (target.letters[i] != 'I') mask |= (1u << (n - 1 - i));
    }
    double acc = 0.0;
    for (std::uint32_t idx = 0; idx < probs.size(); ++idx) {
        const int parity = std::popcount(idx & mask) & 1;
        acc += parity ? -probs[idx] : probs[idx];
    }
    return acc;
}

double expectation_from_counts(const CountsVector& counts, const PauliString& target,
                               const PauliString& setting) {
    return expectation_from_probs(counts.probabilities(), target, setting);
}

double overlap_from_expectations(const std::map<PauliString, double>& expectations,
                                 const std::vector<PauliTerm>& terms) {
    double acc = 0.0;
    for (const PauliTerm& t : terms) {
        if (t.string.is_identity()) {
            acc += t.coefficient;  // <I...I> = 1
            continue;
        }
        const auto it = expectations.find(t.string);
        if (it == expectations.end()) {
            throw std::invalid_argument("overlap: missing expectation for " + t.string.letters);
        }
        acc += t.coefficient * it->second;
    }
    return acc;
}

std::vector<double> setting_probabilities(const StateVector& state, const PauliString& setting) {
    if (setting.size() != state.n_qubits) {
        throw std::invalid_argument("setting_probabilities: string length mismatch");
    }
    static const Eigen::Matrix2cd h = (Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0);
    static const Eigen::Matrix2cd hsdg = [] {
        Eigen::Matrix2cd sdg;
        sdg << 1, 0, 0, cplx(0, -1);
        return Eigen::Matrix2cd(((Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::sqrt(2.0)) * sdg);
    }();
    StateVector rotated = state;
    for (int q = 0; q < setting.size(); ++q) {
        switch (setting.letters[q]) {
            case 'X': rotated = apply_single_qubit(rotated, h, q); break;
            case 'Y': rotated = apply_single_qubit(rotated, hsdg, q); break;
            default: break;
        }
    }
    return probabilities(rotated);
}

}  // namespace shor21::pauli
