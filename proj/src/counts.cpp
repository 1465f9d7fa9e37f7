#include "shor21/counts.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "shor21/qsim.hpp"

namespace shor21 {

CountsVector CountsVector::from_dense(std::span<const std::uint64_t> dense, int n_bits) {
    if (dense.size() != (std::size_t{1} << n_bits)) {
        throw std::invalid_argument("CountsVector: dense size must be 2^n_bits");
    }
    CountsVector cv;
    cv.n_bits = n_bits;
    for (std::uint32_t i = 0; i < dense.size(); ++i) {
        if (dense[i] > 0) cv.counts[bitstring_of(i, n_bits)] = dense[i];
        cv.shots += dense[i];
    }
    return cv;
}

std::vector<std::uint64_t> CountsVector::dense() const {
    std::vector<std::uint64_t> out(std::size_t{1} << n_bits, 0);
    for (const auto& [bits, c] : counts) out[index_of_bitstring(bits)] = c;
    return out;
}

std::vector<double> CountsVector::probabilities() const {
    if (shots == 0) throw std::invalid_argument("CountsVector: no shots");
    std::vector<double> p(std::size_t{1} << n_bits, 0.0);
    for (const auto& [bits, c] : counts) {
        p[index_of_bitstring(bits)] = static_cast<double>(c) / static_cast<double>(shots);
    }
    return p;
}

void CountsVector::validate() const {
    std::uint64_t total = 0;
    for (const auto& [bits, c] : counts) {
        if (static_cast<int>(bits.size()) != n_bits) {
            throw std::invalid_argument("CountsVector: bitstring width mismatch: " + bits);
        }
        index_of_bitstring(bits);  // throws on bad characters
        total += c;
    }
    if (total != shots) throw std::invalid_argument("CountsVector: counts do not sum to shots");
}

void write_counts_csv(std::ostream& os, const CountsVector& counts) {
    const auto dense = counts.dense();
    for (std::uint32_t i = 0; i < dense.size(); ++i) {
        os << bitstring_of(i, counts.n_bits) << "," << dense[i] << "\n";
    }
}

CountsVector read_counts_csv(std::istream& is) {
    CountsVector cv;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("counts CSV: missing comma");
        const std::string bits = line.substr(0, comma);
        const std::uint64_t c = std::stoull(line.substr(comma + 1));
        if (cv.n_bits == 0) cv.n_bits = static_cast<int>(bits.size());
        if (c > 0) cv.counts[bits] = c;
        cv.shots += c;
    }
    cv.validate();
    return cv;
}

}  // namespace shor21
