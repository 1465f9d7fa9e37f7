#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>

namespace shor21 {

// All randomness in the toolkit flows from a single user seed through
// derive_seed: stream k of master seed s is splitmix64 applied twice to
// s xor (k+1)*golden-gamma. Derived streams feed mt19937_64, so results
// are identical across platforms and independent of thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ ((stream + 1) * 0x9e3779b97f4a7c15ull);
    splitmix64(s);
    return splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform double in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::uint64_t next_u64() { return eng_(); }

    std::uint64_t uniform_index(std::uint64_t n) {
        // rejection sampling keeps the draw unbiased
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Haar-uniform single-qubit pure state (cos(t/2), e^{i phi} sin(t/2))
    std::array<std::complex<double>, 2> random_qubit_state() {
        const double z = 2.0 * uniform() - 1.0;
        const double phi = 2.0 * 3.14159265358979323846 * uniform();
        const double half = 0.5 * std::acos(z);
        return {std::complex<double>(std::cos(half), 0.0),
                std::polar(std::sin(half), phi)};
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace shor21
