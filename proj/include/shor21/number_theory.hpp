#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shor21/counts.hpp"
#include "shor21/shor.hpp"

namespace shor21::nt {

// reduced fraction with positive denominator; all arithmetic is integer-exact
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);  // normalizes

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    std::string str() const;
};

struct CFExpansion {
    std::vector<long long> terms;  // [a0, a1, ..., an]
};

long long powmod(long long base, long long exp, long long mod);

// Euclidean continued-fraction expansion of a nonnegative rational
CFExpansion continued_fraction(const Rational& x);

// convergents p_k/q_k of the expansion via the standard recurrence
std::vector<Rational> convergents(const CFExpansion& cf);

// Scans the convergents of outcome/2^n_bits in order and returns the first
// denominator r' with 1 < r' <= N and a^{r'} mod N = 1; absence is a value.
std::optional<long long> extract_order(long long outcome, int n_bits, long long a, long long n);

// gcd(a^{r/2} +- 1, N) for even r; for odd r and a = b^2 a perfect square,
// gcd(b^r +- 1, N). Returns the factor pair sorted ascending.
std::optional<std::pair<long long, long long>> factor_from_order(long long a, long long r, long long n);

struct OutcomeReport {
    std::string bits;
    std::uint64_t count = 0;
    std::optional<long long> order;
    std::optional<std::pair<long long, long long>> factors;
};

struct PipelineReport {
    std::vector<OutcomeReport> outcomes;  // ascending bitstring order
    double success_fraction = 0.0;        // shots on factor-yielding outcomes / shots
    std::optional<std::pair<long long, long long>> factors;
};

PipelineReport shor_pipeline(const CountsVector& counts, const shor::ShorInstance& instance);

}  // namespace shor21::nt
