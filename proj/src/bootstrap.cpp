#include "shor21/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shor21/rng.hpp"

namespace shor21::stats {

namespace {

void validate_columns(const std::vector<std::vector<std::uint64_t>>& columns) {
    // equal shot totals are the caller's precondition; resampling whole
    // columns preserves whatever total each column has
    if (columns.size() < 2) throw std::invalid_argument("bootstrap_ci: need at least two columns");
    const std::size_t n_outcomes = columns.front().size();
    if (n_outcomes == 0) throw std::invalid_argument("bootstrap_ci: empty columns");
    for (const auto& col : columns) {
        if (col.size() != n_outcomes) throw std::invalid_argument("bootstrap_ci: ragged columns");
    }
}

double percentile(std::vector<double>& values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::vector<double> resample_means(const std::vector<std::vector<std::uint64_t>>& columns,
                                   std::uint64_t seed) {
    const std::size_t k = columns.size();
    const std::size_t n_outcomes = columns.front().size();
    Rng rng(seed);
    std::vector<double> mean(n_outcomes, 0.0);
    for (std::size_t pick = 0; pick < k; ++pick) {
        const std::size_t idx = static_cast<std::size_t>(rng.uniform_index(k));
        for (std::size_t o = 0; o < n_outcomes; ++o) {
            mean[o] += static_cast<double>(columns[idx][o]);
        }
    }
    for (double& m : mean) m /= static_cast<double>(k);
    return mean;
}

std::vector<OutcomeInterval> assemble(const std::vector<std::vector<std::uint64_t>>& columns,
                                      std::vector<std::vector<double>>& means, double confidence) {
    const std::size_t n_outcomes = columns.front().size();
    std::vector<OutcomeInterval> out(n_outcomes);
    for (std::size_t o = 0; o < n_outcomes; ++o) {
        double m = 0.0;
        for (const auto& col : columns) m += static_cast<double>(col[o]);
        out[o].mean = m / static_cast<double>(columns.size());
        std::vector<double> v(means.size());
        for (std::size_t b = 0; b < means.size(); ++b) v[b] = means[b][o];
        std::vector<double> v2 = v;
        out[o].lo = percentile(v, (1.0 - confidence) / 2.0);
        out[o].hi = percentile(v2, (1.0 + confidence) / 2.0);
    }
    return out;
}

}  // namespace

std::vector<OutcomeInterval> bootstrap_ci_serial(const std::vector<std::vector<std::uint64_t>>& columns,
                                                 int resamples, double confidence, std::uint64_t seed) {
    validate_columns(columns);
    if (resamples < 1) throw std::invalid_argument("bootstrap_ci: need at least one resample");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("bootstrap_ci: confidence must be in (0,1)");
    }
    std::vector<std::vector<double>> means(resamples);
    for (int b = 0; b < resamples; ++b) {
        means[b] = resample_means(columns, derive_seed(seed, static_cast<std::uint64_t>(b)));
    }
    return assemble(columns, means, confidence);
}

std::vector<OutcomeInterval> bootstrap_ci(const std::vector<std::vector<std::uint64_t>>& columns,
                                          int resamples, double confidence, std::uint64_t seed) {
    validate_columns(columns);
    if (resamples < 1) throw std::invalid_argument("bootstrap_ci: need at least one resample");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("bootstrap_ci: confidence must be in (0,1)");
    }
    std::vector<std::vector<double>> means(resamples);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < resamples; ++b) {
        means[b] = resample_means(columns, derive_seed(seed, static_cast<std::uint64_t>(b)));
    }
    return assemble(columns, means, confidence);
}

}  // namespace shor21::stats
