#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shor21/counts.hpp"
#include "shor21/qsim.hpp"

namespace shor21::pauli {

// Letters over {I, X, Y, Z}; letter i acts on qubit i (c0 first), matching
// the bitstring convention of the rest of the toolkit. Published reference
// tables spell strings with the least significant qubit first; use
// reference_spelling() when diffing against them.
struct PauliString {
    std::string letters;

    PauliString() = default;
    explicit PauliString(std::string s);

    int size() const { return static_cast<int>(letters.size()); }
    int weight() const;  // number of non-I letters
    bool is_identity() const { return weight() == 0; }
    std::string reference_spelling() const { return {letters.rbegin(), letters.rend()}; }

    auto operator<=>(const PauliString&) const = default;
};

struct PauliTerm {
    PauliString string;
    double coefficient = 0.0;  // tr(rho sigma)/2^n
};

// <psi| sigma |psi>
double pauli_expectation(const StateVector& state, const PauliString& s);

// All terms with |coefficient| >= 1e-12, sorted by letters. The identity
// term (coefficient 1/2^n) is always present for a normalized state.
std::vector<PauliTerm> pauli_decompose(const StateVector& state);
std::vector<PauliTerm> pauli_decompose_serial(const StateVector& state);

// strings obtained by replacing any nonempty subset of non-I letters with I,
// excluding the all-I string
std::set<PauliString> derivable_from(const PauliString& setting);

// S_d \ S_u of the measurement-reduction rule: the settings that cannot be
// derived from any other term's counts
std::set<PauliString> minimal_settings(const std::set<PauliString>& terms);

bool is_derivable_or_equal(const PauliString& target, const PauliString& setting);

// parity-weighted sum of outcome probabilities; counts must have been
// measured in `setting`'s local bases
double expectation_from_probs(std::span<const double> probs, const PauliString& target,
                              const PauliString& setting);
double expectation_from_counts(const CountsVector& counts, const PauliString& target,
                               const PauliString& setting);

// tr(|Psi><Psi| rho) = sum_s p_s <sigma_s>_rho; throws if a nonzero term has
// no expectation value
double overlap_from_expectations(const std::map<PauliString, double>& expectations,
                                 const std::vector<PauliTerm>& terms);

// outcome probabilities of `state` measured in the local bases of `setting`
// (X -> H, Y -> S^dagger then H, Z/I -> identity)
std::vector<double> setting_probabilities(const StateVector& state, const PauliString& setting);

}  // namespace shor21::pauli
