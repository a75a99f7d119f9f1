#pragma once

// Independent reference implementations used only by tests. These follow
// different evaluation routes than the library (power series, exact
// products, alternating sums, brute-force scans) so that agreement is
// meaningful.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracles {

/// Standard normal CDF by the Taylor series
/// Phi(x) = 1/2 + pdf(x) * sum_k x^(2k+1) / (1*3*...*(2k+1)),
/// summed in long double. Good to ~1e-17 for |x| <= 12.
inline long double normal_cdf_series(long double x) {
    const long double pdf = std::exp(-0.5L * x * x) * 0.39894228040143267793994606L;
    long double term = x;
    long double sum = x;
    for (int k = 1; k < 400; ++k) {
        term *= x * x / (2.0L * k + 1.0L);
        sum += term;
        if (std::fabs(term) < 1e-25L * std::fabs(sum)) break;
    }
    return 0.5L + pdf * sum;
}

/// ln Gamma(x + k) from ln Gamma(x) by the recurrence, in long double.
inline long double log_gamma_recurrence(long double lg_base, long double base, int steps) {
    long double lg = lg_base;
    for (int k = 0; k < steps; ++k) lg += std::log(base + k);
    return lg;
}

/// Exact product for B(1/2, n) / 2 = prod_{k=1}^{n-1} k / (k + 1/2).
inline long double half_beta_exact(std::int64_t n) {
    long double prod = 1.0L;
    for (std::int64_t k = 1; k < n; ++k) prod *= (long double)k / ((long double)k + 0.5L);
    return prod;
}

/// Terminating binomial expansion of the phi_fn integrand:
/// sum_k C(n-1,k) (-1)^k z^(2k+1) / (2k+1). Exact algebra; numerically
/// usable only for small n, which is exactly where the tests apply it.
inline long double phi_binomial_sum(std::int64_t n, long double x) {
    const long double z = std::exp(-x);
    long double coeff = 1.0L;  // C(n-1, k) (-1)^k
    long double zp = z;        // z^(2k+1)
    long double sum = 0.0L;
    for (std::int64_t k = 0; k <= n - 1; ++k) {
        sum += coeff * zp / (2.0L * k + 1.0L);
        coeff *= -(long double)(n - 1 - k) / (long double)(k + 1);
        zp *= z * z;
    }
    return sum;
}

/// Survivor function by the alternating binomial expansion over k,
/// including the k = 0 term, in long double. Loses roughly lg C(m, m/2)
/// digits to cancellation, so callers keep m <= 30.
inline long double survivor_alternating_sum(std::int64_t m, std::int64_t n, long double tau,
                                            long double gamma_e) {
    const long double c = 1.0L / (1.0L + gamma_e);
    const long double p = -std::expm1(-tau);
    const long double q = std::exp(-tau);
    long double sum = 0.0L;
    long double binom = 1.0L;  // C(m, k)
    for (std::int64_t k = 0; k <= m; ++k) {
        const long double base = p * std::pow(c, (long double)k) + q;
        const long double term = binom * std::pow(base, (long double)(n - 1));
        sum += (k % 2 == 0) ? term : -term;
        binom *= (long double)(m - k) / (long double)(k + 1);
    }
    return sum;
}

/// Deterministic uniform/exponential draws for Monte-Carlo oracles,
/// decoupled from the library's counter-based generator.
class Mt64 {
public:
    explicit Mt64(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }
    double unit_exp() { return -std::log1p(-uniform()); }

private:
    std::mt19937_64 gen_;
};

}  // namespace oracles
