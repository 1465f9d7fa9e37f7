#include "shor21/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shor21/rng.hpp"
#include "shor21/shor.hpp"

namespace shor21::noise {

void ReadoutNoiseModel::validate() const {
    for (const QubitReadout& q : qubits) {
        if (q.p01 < 0.0 || q.p01 > 1.0 || q.p10 < 0.0 || q.p10 > 1.0) {
            throw std::invalid_argument("ReadoutNoiseModel: probabilities must be in [0,1]");
        }
    }
}

ReadoutNoiseModel ReadoutNoiseModel::symmetric(int n_qubits, double rate) {
    ReadoutNoiseModel m;
    m.qubits.assign(n_qubits, QubitReadout{rate, rate});
    m.validate();
    return m;
}

void CalibrationMatrix::validate() const {
    if (m.rows() != m.cols() || m.rows() != (1ll << n_bits)) {
        throw std::invalid_argument("CalibrationMatrix: must be 2^k x 2^k");
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        double sum = 0.0;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            const double v = m(r, c);
            if (v < 0.0 || v > 1.0) {
                throw std::invalid_argument("CalibrationMatrix: entries must be in [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kNormTol) {
            throw std::invalid_argument("CalibrationMatrix: columns must sum to 1");
        }
    }
}

CountsVector sample_counts(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("sample_counts: shots must be positive");
    double total = 0.0;
    for (double p : dist) {
        if (p < -1e-12) throw std::invalid_argument("sample_counts: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("sample_counts: distribution does not sum to 1");
    }

    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += std::max(dist[i], 0.0);
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    int n_bits = 0;
    while ((std::size_t{1} << n_bits) < dist.size()) ++n_bits;
    if ((std::size_t{1} << n_bits) != dist.size()) {
        throw std::invalid_argument("sample_counts: distribution size must be a power of two");
    }

    Rng rng(seed);
    std::vector<std::uint64_t> dense(dist.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), dist.size() - 1);
        ++dense[idx];
    }
    return CountsVector::from_dense(dense, n_bits);
}

std::vector<double> apply_readout_noise(std::span<const double> dist, const ReadoutNoiseModel& model) {
    model.validate();
    const int n = static_cast<int>(model.qubits.size());
    if (dist.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("apply_readout_noise: size mismatch with model");
    }
    // apply each qubit's 2x2 confusion matrix along its own axis
    std::vector<double> cur(dist.begin(), dist.end());
    for (int q = 0; q < n; ++q) {
        const double p01 = model.qubits[q].p01;
        const double p10 = model.qubits[q].p10;
        const std::size_t step = std::size_t{1} << (n - 1 - q);
        std::vector<double> next(cur.size());
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            if (idx & step) continue;
            const double v0 = cur[idx];
            const double v1 = cur[idx | step];
            next[idx] = (1.0 - p01) * v0 + p10 * v1;
            next[idx | step] = p01 * v0 + (1.0 - p10) * v1;
        }
        cur.swap(next);
    }
    return cur;
}

CalibrationMatrix build_calibration_matrix(const ReadoutNoiseModel& model) {
    model.validate();
    const int n = static_cast<int>(model.qubits.size());
    const Eigen::Index d = 1ll << n;
    CalibrationMatrix cal;
    cal.n_bits = n;
    cal.m.resize(d, d);
    // column j = noisy distribution of basis preparation j
    for (Eigen::Index j = 0; j < d; ++j) {
        std::vector<double> e(d, 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        const std::vector<double> col = apply_readout_noise(e, model);
        for (Eigen::Index r = 0; r < d; ++r) cal.m(r, j) = col[static_cast<std::size_t>(r)];
    }
    return cal;
}

CalibrationMatrix build_calibration_matrix(const std::vector<CountsVector>& preparations) {
    if (preparations.empty()) throw std::invalid_argument("calibration: no preparations");
    const int n = preparations.front().n_bits;
    const Eigen::Index d = 1ll << n;
    if (static_cast<Eigen::Index>(preparations.size()) != d) {
        throw std::invalid_argument("calibration: need one preparation per basis state");
    }
    CalibrationMatrix cal;
    cal.n_bits = n;
    cal.m.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const std::vector<double> p = preparations[static_cast<std::size_t>(j)].probabilities();
        for (Eigen::Index r = 0; r < d; ++r) cal.m(r, j) = p[static_cast<std::size_t>(r)];
    }
    cal.validate();
    return cal;
}

double condition_number(const CalibrationMatrix& cal) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cal.m);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

namespace {

// Equality-constrained least squares on the active set S:
//   min ||M x - c||^2  s.t.  sum_{i in S} x_i = 1,  x_i = 0 outside S.
// Bordered normal equations give x_S and the multiplier mu.
struct ActiveSolve {
    Eigen::VectorXd x;
    double mu = 0.0;
};

ActiveSolve solve_on_support(const Eigen::MatrixXd& mtm, const Eigen::VectorXd& mtc,
                             const std::vector<int>& support) {
    const int k = static_cast<int>(support.size());
    Eigen::MatrixXd sys(k + 1, k + 1);
    Eigen::VectorXd rhs(k + 1);
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) sys(r, c) = mtm(support[r], support[c]);
        sys(r, k) = -1.0;
        rhs(r) = mtc(support[r]);
    }
    for (int c = 0; c < k; ++c) sys(k, c) = 1.0;
    sys(k, k) = 0.0;
    rhs(k) = 1.0;
    const Eigen::VectorXd sol = sys.fullPivLu().solve(rhs);
    ActiveSolve out;
    out.x = sol.head(k);
    out.mu = sol(k);
    return out;
}

}  // namespace

std::vector<double> mitigate(const CountsVector& noisy, const CalibrationMatrix& cal) {
    noisy.validate();
    cal.validate();
    if (noisy.n_bits != cal.n_bits) throw std::invalid_argument("mitigate: dimension mismatch");
    const double cond = condition_number(cal);
    if (!(cond < 1e12)) {
        throw std::runtime_error("mitigate: calibration matrix is singular or ill-conditioned, cond = " +
                                 std::to_string(cond));
    }

    const Eigen::Index d = cal.m.rows();
    Eigen::VectorXd c(d);
    const std::vector<double> p = noisy.probabilities();
    for (Eigen::Index i = 0; i < d; ++i) c(i) = p[static_cast<std::size_t>(i)];

    const Eigen::MatrixXd mtm = cal.m.transpose() * cal.m;
    const Eigen::VectorXd mtc = cal.m.transpose() * c;

    std::vector<int> support(d);
    for (Eigen::Index i = 0; i < d; ++i) support[i] = static_cast<int>(i);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    double mu = 0.0;
    const int max_iter = 16 * static_cast<int>(d);
    for (int iter = 0; iter < max_iter; ++iter) {
        const ActiveSolve sol = solve_on_support(mtm, mtc, support);
        // drop the most negative coordinate, if any
        int worst = -1;
        double worst_val = -1e-12;
        for (int i = 0; i < static_cast<int>(support.size()); ++i) {
            if (sol.x(i) < worst_val) {
                worst_val = sol.x(i);
                worst = i;
            }
        }
        if (worst >= 0 && support.size() > 1) {
            support.erase(support.begin() + worst);
            continue;
        }
        x.setZero();
        for (int i = 0; i < static_cast<int>(support.size()); ++i) {
            x(support[i]) = std::max(sol.x(i), 0.0);
        }
        mu = sol.mu;
        // KKT: excluded coordinates need gradient >= mu
        const Eigen::VectorXd grad = mtm * x - mtc;
        int enter = -1;
        double most_violating = -1e-10;
        for (Eigen::Index i = 0; i < d; ++i) {
            if (std::find(support.begin(), support.end(), static_cast<int>(i)) != support.end()) {
                continue;
            }
            const double slack = grad(i) - mu;
            if (slack < most_violating) {
                most_violating = slack;
                enter = static_cast<int>(i);
            }
        }
        if (enter < 0) break;
        support.push_back(enter);
        std::sort(support.begin(), support.end());
    }

    std::vector<double> out(d);
    const double shots = static_cast<double>(noisy.shots);
    for (Eigen::Index i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = x(i) * shots;
    return out;
}

DensityMatrix run_with_depolarizing(const Circuit& circuit, double cx_rate) {
    const Circuit lowered = shor::lower_toffolis(circuit);
    DensityMatrix rho = density_from_state(basis_state(circuit.n_qubits, 0));
    for (const Op& op : lowered.ops) {
        rho = apply_gate_density(rho, op.gate, op.qubits);
        if (cx_rate > 0.0 && op.qubits.size() == 2) {
            rho = depolarize_two_qubit(rho, op.qubits[0], op.qubits[1], cx_rate);
        }
    }
    return rho;
}

}  // namespace shor21::noise
