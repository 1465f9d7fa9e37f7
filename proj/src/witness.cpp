#include "shor21/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "shor21/rng.hpp"

namespace shor21::witness {

namespace {

const char* kQubitNames[5] = {"c0", "c1", "c2", "q0", "q1"};

std::string side_name(const std::vector<int>& side) {
    std::string s = "(";
    for (int q : side) {
        if (q < 0 || q > 4) throw std::out_of_range("bipartition qubit out of range");
        s += kQubitNames[q];
    }
    s += ")";
    return s;
}

}  // namespace

std::vector<int> Bipartition::side_b(int n_qubits) const {
    std::vector<int> b;
    for (int q = 0; q < n_qubits; ++q) {
        if (std::find(side_a.begin(), side_a.end(), q) == side_a.end()) b.push_back(q);
    }
    return b;
}

std::string Bipartition::name(int n_qubits) const {
    return side_name(side_a) + side_name(side_b(n_qubits));
}

std::vector<Bipartition> all_bipartitions(int n_qubits) {
    std::vector<Bipartition> out;
    for (int size = 1; size <= n_qubits / 2; ++size) {
        std::vector<int> idx(size);
        // lexicographic subsets of the given size
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            out.push_back(Bipartition{idx});
            int k = size - 1;
            while (k >= 0 && idx[k] == n_qubits - size + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int j = k + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

double max_product_overlap(const StateVector& state, const Bipartition& b) {
    const int n = state.n_qubits;
    if (b.side_a.empty() || static_cast<int>(b.side_a.size()) >= n) {
        throw std::invalid_argument("max_product_overlap: side_a must be a nonempty proper subset");
    }
    for (int q : b.side_a) {
        if (q < 0 || q >= n) throw std::out_of_range("max_product_overlap: qubit out of range");
    }
    const std::vector<int> side_b = b.side_b(n);
    const int ka = static_cast<int>(b.side_a.size());
    const int kb = static_cast<int>(side_b.size());
    Eigen::MatrixXcd m(1 << ka, 1 << kb);
    for (std::uint32_t idx = 0; idx < state.amp.size(); ++idx) {
        std::uint32_t ra = 0, rb = 0;
        for (int j = 0; j < ka; ++j) ra = (ra << 1) | static_cast<std::uint32_t>(qubit_bit(idx, b.side_a[j], n));
        for (int j = 0; j < kb; ++j) rb = (rb << 1) | static_cast<std::uint32_t>(qubit_bit(idx, side_b[j], n));
        m(ra, rb) = state.amp[idx];
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const double s = svd.singularValues()(0);
    return s * s;
}

void WitnessSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("WitnessSpec: need 0 < alpha < 1");
}

double witness_value(const WitnessSpec& spec, double overlap) {
    spec.validate();
    return spec.alpha - overlap;
}

double max_bipartite_overlap(const StateVector& state) {
    double best = 0.0;
    for (const Bipartition& b : all_bipartitions(state.n_qubits)) {
        best = std::max(best, max_product_overlap(state, b));
    }
    return best;
}

std::vector<BipartitionVerdict> certify_bipartite_entanglement(double overlap,
                                                               const StateVector& state,
                                                               double margin) {
    if (overlap < 0.0 || overlap > 1.0) {
        throw std::invalid_argument("certify: overlap must be in [0,1]");
    }
    std::vector<BipartitionVerdict> out;
    for (const Bipartition& b : all_bipartitions(state.n_qubits)) {
        BipartitionVerdict v;
        v.bipartition = b;
        v.beta = max_product_overlap(state, b);
        // ties at the margin do not certify (1e-9 absorbs SVD rounding)
        v.entangled = overlap - v.beta - margin > 1e-9;
        if (state.n_qubits == 5 && b.side_a == std::vector<int>{2, 4}) {
            v.note = "reference table prints this bipartition malformed as (c0q1)(c0c1q0); "
                     "value matches the (c2q1)(c0c1q0) reading";
        }
        if (state.n_qubits == 5 && b.side_a == std::vector<int>{0}) {
            v.note = "not listed in the reference table; value from the SVD directly";
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

struct Restart {
    double overlap = 0.0;
    std::vector<std::array<cplx, 2>> factors;
};

Restart run_restart(const StateVector& state, std::uint64_t seed) {
    const int n = state.n_qubits;
    Rng rng(seed);
    std::vector<std::array<cplx, 2>> v(n);
    for (int q = 0; q < n; ++q) v[q] = rng.random_qubit_state();

    double last = -1.0;
    for (int sweep = 0; sweep < 10000; ++sweep) {
        double norm_w = 0.0;
        for (int q = 0; q < n; ++q) {
            // w[b] = sum over basis states with qubit q = b of psi * conj of the other factors
            cplx w0{0.0, 0.0}, w1{0.0, 0.0};
            for (std::uint32_t idx = 0; idx < state.amp.size(); ++idx) {
                cplx prod = state.amp[idx];
                if (prod == cplx{0.0, 0.0}) continue;
                for (int j = 0; j < n; ++j) {
                    if (j == q) continue;
                    prod *= std::conj(v[j][qubit_bit(idx, j, n)]);
                }
                if (qubit_bit(idx, q, n)) {
                    w1 += prod;
                } else {
                    w0 += prod;
                }
            }
            norm_w = std::sqrt(std::norm(w0) + std::norm(w1));
            if (norm_w > 0.0) {
                v[q] = {w0 / norm_w, w1 / norm_w};
            }
        }
        const double overlap = norm_w * norm_w;  // |<theta|psi>|^2 after the last update
        if (std::abs(overlap - last) < 1e-10) {
            last = overlap;
            break;
        }
        last = overlap;
    }
    return Restart{last, std::move(v)};
}

}  // namespace

GreedyResult greedy_product_search_serial(const StateVector& state, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("greedy_product_search: need at least one restart");
    GreedyResult best;
    best.overlap = -1.0;
    for (int r = 0; r < restarts; ++r) {
        Restart res = run_restart(state, derive_seed(seed, static_cast<std::uint64_t>(r)));
        if (res.overlap > best.overlap) {
            best.overlap = res.overlap;
            best.factors = std::move(res.factors);
        }
    }
    return best;
}

GreedyResult greedy_product_search(const StateVector& state, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("greedy_product_search: need at least one restart");
    std::vector<Restart> slots(restarts);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < restarts; ++r) {
        slots[r] = run_restart(state, derive_seed(seed, static_cast<std::uint64_t>(r)));
    }
    GreedyResult best;
    best.overlap = -1.0;
    for (Restart& res : slots) {  // fixed order keeps the winner deterministic
        if (res.overlap > best.overlap) {
            best.overlap = res.overlap;
            best.factors = std::move(res.factors);
        }
    }
    return best;
}

}  // namespace shor21::witness
