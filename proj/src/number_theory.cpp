#include "shor21/number_theory.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace shor21::nt {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : n;
    den = g ? d / g : d;
    if (num == 0) den = 1;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

long long powmod(long long base, long long exp, long long mod) {
    if (mod <= 0) throw std::invalid_argument("powmod: modulus must be positive");
    unsigned __int128 acc = 1;
    unsigned __int128 b = static_cast<unsigned __int128>(((base % mod) + mod) % mod);
    long long e = exp;
    while (e > 0) {
        if (e & 1) acc = (acc * b) % static_cast<unsigned __int128>(mod);
        b = (b * b) % static_cast<unsigned __int128>(mod);
        e >>= 1;
    }
    return static_cast<long long>(acc);
}

CFExpansion continued_fraction(const Rational& x) {
    if (x.num < 0) throw std::invalid_argument("continued_fraction: input must be nonnegative");
    CFExpansion cf;
    long long num = x.num;
    long long den = x.den;
    while (true) {
        cf.terms.push_back(num / den);
        const long long rem = num % den;
        if (rem == 0) break;
        num = den;
        den = rem;
    }
    return cf;
}

std::vector<Rational> convergents(const CFExpansion& cf) {
    if (cf.terms.empty()) throw std::invalid_argument("convergents: empty expansion");
    std::vector<Rational> out;
    long long p_prev = 1, q_prev = 0;
    long long p = cf.terms[0], q = 1;
    out.emplace_back(p, q);
    for (std::size_t k = 1; k < cf.terms.size(); ++k) {
        const long long a = cf.terms[k];
        const long long p_next = a * p + p_prev;
        const long long q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        out.emplace_back(p, q);
    }
    return out;
}

std::optional<long long> extract_order(long long outcome, int n_bits, long long a, long long n) {
    if (outcome < 0 || outcome >= (1ll << n_bits)) {
        throw std::invalid_argument("extract_order: outcome out of range");
    }
    const Rational phi(outcome, 1ll << n_bits);
    for (const Rational& c : convergents(continued_fraction(phi))) {
        const long long r = c.den;
        if (r > 1 && r <= n && powmod(a, r, n) == 1) return r;
    }
    return std::nullopt;
}

namespace {

std::optional<long long> integer_sqrt(long long a) {
    const long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(a))));
    for (long long b = std::max(0ll, s - 1); b <= s + 1; ++b) {
        if (b * b == a) return b;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<long long, long long>> factor_from_order(long long a, long long r, long long n) {
    if (r <= 0 || powmod(a, r, n) != 1) {
        throw std::invalid_argument("factor_from_order: r is not an order of a mod N");
    }
    long long half_power;  // a^{r/2} mod N, possibly via a = b^2
    if (r % 2 == 0) {
        half_power = powmod(a, r / 2, n);
    } else {
        const auto b = integer_sqrt(a);
        if (!b) return std::nullopt;  // odd order, a not a perfect square
        half_power = powmod(*b, r, n);
    }
    const long long g1 = std::gcd(((half_power - 1) % n + n) % n, n);
    const long long g2 = std::gcd((half_power + 1) % n, n);
    for (long long g : {g1, g2}) {
        if (g > 1 && g < n) {
            const long long p = std::min(g, n / g);
            return std::make_pair(p, n / p);
        }
    }
    return std::nullopt;
}

PipelineReport shor_pipeline(const CountsVector& counts, const shor::ShorInstance& instance) {
    instance.validate();
    if (counts.n_bits != instance.n_bits) {
        throw std::invalid_argument("shor_pipeline: counts width does not match instance");
    }
    counts.validate();
    PipelineReport report;
    const auto dense = counts.dense();
    std::uint64_t good = 0;
    for (std::uint32_t outcome = 0; outcome < dense.size(); ++outcome) {
        OutcomeReport o;
        o.bits = bitstring_of(outcome, instance.n_bits);
        o.count = dense[outcome];
        o.order = extract_order(outcome, instance.n_bits, instance.a, instance.n);
        if (o.order) {
            o.factors = factor_from_order(instance.a, *o.order, instance.n);
            if (o.factors) {
                good += o.count;
                // the run only finds factors through outcomes it observed
                if (o.count > 0 && !report.factors) report.factors = o.factors;
            }
        }
        report.outcomes.push_back(std::move(o));
    }
    report.success_fraction =
        counts.shots ? static_cast<double>(good) / static_cast<double>(counts.shots) : 0.0;
    return report;
}

}  // namespace shor21::nt
