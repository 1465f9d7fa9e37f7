// Compares the OpenMP kernels against their serial reference implementations
// and checks that both produce identical results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "shor21/bootstrap.hpp"
#include "shor21/noise.hpp"
#include "shor21/pauli.hpp"
#include "shor21/rng.hpp"
#include "shor21/shor.hpp"
#include "shor21/tomography.hpp"
#include "shor21/witness.hpp"

using namespace shor21;

namespace {

double time_of(const std::function<void()>& fn, int repeats) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count() / repeats;
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-24s serial %8.4f s   openmp %8.4f s   speedup %5.2fx   results %s\n", name,
                serial_s, parallel_s, serial_s / parallel_s, identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled in this build\n");
#endif

    const StateVector psi = shor::ideal_pre_qft_state();

    {
        const int repeats = 20;
        auto serial = pauli::pauli_decompose_serial(psi);
        auto parallel = pauli::pauli_decompose(psi);
        bool same = serial.size() == parallel.size();
        for (std::size_t i = 0; same && i < serial.size(); ++i) {
            same = serial[i].string == parallel[i].string &&
                   serial[i].coefficient == parallel[i].coefficient;
        }
        const double ts = time_of([&] { pauli::pauli_decompose_serial(psi); }, repeats);
        const double tp = time_of([&] { pauli::pauli_decompose(psi); }, repeats);
        report("pauli_decompose", ts, tp, same);
    }

    {
        const int restarts = 200;
        const auto serial = witness::greedy_product_search_serial(psi, restarts, 9);
        const auto parallel = witness::greedy_product_search(psi, restarts, 9);
        const double ts =
            time_of([&] { witness::greedy_product_search_serial(psi, restarts, 9); }, 3);
        const double tp = time_of([&] { witness::greedy_product_search(psi, restarts, 9); }, 3);
        report("greedy_product_search", ts, tp, serial.overlap == parallel.overlap);
    }

    {
        std::vector<std::vector<std::uint64_t>> columns;
        const std::vector<double> p{0.4, 0.3, 0.2, 0.1};
        for (int k = 0; k < 100; ++k) {
            columns.push_back(noise::sample_counts(p, 8192, derive_seed(4, k)).dense());
        }
        const int resamples = 20000;
        const auto serial = stats::bootstrap_ci_serial(columns, resamples, 0.95, 5);
        const auto parallel = stats::bootstrap_ci(columns, resamples, 0.95, 5);
        bool same = serial.size() == parallel.size();
        for (std::size_t o = 0; same && o < serial.size(); ++o) {
            same = serial[o].lo == parallel[o].lo && serial[o].hi == parallel[o].hi;
        }
        const double ts =
            time_of([&] { stats::bootstrap_ci_serial(columns, resamples, 0.95, 5); }, 3);
        const double tp = time_of([&] { stats::bootstrap_ci(columns, resamples, 0.95, 5); }, 3);
        report("bootstrap_ci", ts, tp, same);
    }

    {
        const DensityMatrix rho = tomo::ideal_control_state();
        const std::uint64_t shots = 65536;
        const auto serial = tomo::simulate_tomography_serial(rho, shots, 6);
        const auto parallel = tomo::simulate_tomography(rho, shots, 6);
        bool same = true;
        for (const auto& [bases, counts] : serial.per_setting) {
            same = same && parallel.per_setting.at(bases).counts == counts.counts;
        }
        const double ts = time_of([&] { tomo::simulate_tomography_serial(rho, shots, 6); }, 3);
        const double tp = time_of([&] { tomo::simulate_tomography(rho, shots, 6); }, 3);
        report("simulate_tomography", ts, tp, same);
    }

    return 0;
}
