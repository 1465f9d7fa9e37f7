#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shor21/qsim.hpp"

namespace shor21::witness {

// Overlaps within one ulp of the published 3-decimal beta table are not
// certified; see the verdict table note.
constexpr double kCertificationMargin = 1e-3;

struct Bipartition {
    std::vector<int> side_a;  // sorted, nonempty, proper subset

    std::vector<int> side_b(int n_qubits) const;
    std::string name(int n_qubits) const;  // e.g. "(c0q1)(c1c2q0)"
};

// the 15 bipartitions of 5 qubits, smaller side first, enumeration order:
// singles then pairs, lexicographic
std::vector<Bipartition> all_bipartitions(int n_qubits);

// largest squared Schmidt coefficient of `state` across the bipartition
double max_product_overlap(const StateVector& state, const Bipartition& b);

struct WitnessSpec {
    double alpha = 0.0;
    StateVector target_state;

    void validate() const;  // 0 < alpha < 1
};

// alpha - overlap; negative values witness genuine multipartite entanglement
double witness_value(const WitnessSpec& spec, double overlap);

// max of beta over all bipartitions (the witness constant alpha)
double max_bipartite_overlap(const StateVector& state);

struct BipartitionVerdict {
    Bipartition bipartition;
    double beta = 0.0;
    bool entangled = false;
    std::string note;  // reference-table caveats
};

// entangled across B iff overlap > beta_B + margin; convexity extends the
// statement to mixed states
std::vector<BipartitionVerdict> certify_bipartite_entanglement(
    double overlap, const StateVector& state, double margin = kCertificationMargin);

struct GreedyResult {
    double overlap = 0.0;
    std::vector<std::array<cplx, 2>> factors;
};

// Alternating single-qubit optimization of |<theta|psi>|^2 over product
// states, best over seeded random restarts.
GreedyResult greedy_product_search(const StateVector& state, int restarts, std::uint64_t seed);
GreedyResult greedy_product_search_serial(const StateVector& state, int restarts, std::uint64_t seed);

}  // namespace shor21::witness
