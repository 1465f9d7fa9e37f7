#pragma once

#include <cstdint>
#include <vector>

namespace shor21::stats {

struct OutcomeInterval {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Non-parametric bootstrap over experiment columns: each resample draws whole
// columns with replacement (preserving the per-column shot total), and the
// interval is the percentile interval of the per-outcome resample means.
// Columns must be rectangular and share the same shot total.
std::vector<OutcomeInterval> bootstrap_ci(const std::vector<std::vector<std::uint64_t>>& columns,
                                          int resamples, double confidence, std::uint64_t seed);
std::vector<OutcomeInterval> bootstrap_ci_serial(const std::vector<std::vector<std::uint64_t>>& columns,
                                                 int resamples, double confidence, std::uint64_t seed);

}  // namespace shor21::stats
