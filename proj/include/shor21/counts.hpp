#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace shor21 {

// Measurement counts over fixed-width bitstrings. Vectorized forms use
// ascending bitstring order (00..0 first).
struct CountsVector {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    int n_bits = 0;

    static CountsVector from_dense(std::span<const std::uint64_t> dense, int n_bits);
    std::vector<std::uint64_t> dense() const;
    std::vector<double> probabilities() const;
    void validate() const;  // key widths and sum == shots
};

void write_counts_csv(std::ostream& os, const CountsVector& counts);
CountsVector read_counts_csv(std::istream& is);

}  // namespace shor21
