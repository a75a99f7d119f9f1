#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "jamtol/prob.hpp"
#include "jamtol/quadrature.hpp"
#include "jamtol/specialfn.hpp"

namespace jamtol {

/// Normal approximation to the per-phase total interference: sum of the
/// below-tau gains among n-1 independent unit-mean exponentials. An atom
/// of mass e^{-(n-1)tau} sits at zero (no relay jams); the continuous part
/// lives on [0, (n-1)tau]. mu and sigma are the exact moments of the sum.
struct NormalApprox {
    double mu = 0.0;
    double sigma = 0.0;
    double support_hi = 0.0;  // (n-1) tau
    double atom_mass = 1.0;   // probability that no relay jams
};

namespace detail {

// Moments of one truncated term U = X 1{X < tau}, X ~ Exp(1).
// mean  = 1 - (1+tau) e^{-tau}
// m2    = 2 - (tau^2 + 2 tau + 2) e^{-tau}
// Both closed forms cancel to noise for small tau, so below the crossover
// we sum the alternating series instead (exact to an ulp after ~10 terms).
inline void truncated_exp_moments(double tau, double& mean, double& var) {
    if (tau < 0.01) {
        double mean_s = 0.0, m2_s = 0.0;
        double pow_t = tau * tau;  // tau^{2+j} / j!
        double fact = 1.0;
        for (int j = 0; j < 12; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            mean_s += sign * pow_t / (fact * (2.0 + j));
            m2_s += sign * pow_t * tau / (fact * (3.0 + j));
            pow_t *= tau;
            fact *= (j + 1.0);
        }
        mean = mean_s;
        var = m2_s - mean_s * mean_s;
    } else {
        const double et = std::exp(-tau);
        mean = 1.0 - (1.0 + tau) * et;
        var = 1.0 - tau * tau * et - (1.0 + tau) * (1.0 + tau) * et * et;
    }
    if (var < 0.0) var = 0.0;
}

}  // namespace detail

inline NormalApprox interference_approx(std::int64_t n, double tau) {
    if (n < 1) throw std::invalid_argument("interference_approx: n must be >= 1");
    if (!(tau >= 0.0)) throw std::invalid_argument("interference_approx: tau must be >= 0");
    NormalApprox a;
    if (n == 1 || tau == 0.0) {
        a.support_hi = 0.0;
        a.atom_mass = 1.0;
        return a;
    }
    const double k = double(n - 1);
    double mean1 = 0.0, var1 = 0.0;
    detail::truncated_exp_moments(tau, mean1, var1);
    a.mu = k * mean1;
    a.sigma = std::sqrt(k * var1);
    a.support_hi = k * tau;
    a.atom_mass = std::exp(-k * tau);
    return a;
}

/// P(source gain to the selected relay >= x AND that relay's gain to the
/// destination >= y) under max-min selection over n relays. Symmetric in
/// (x, y); collapses to e^{-(x+y)} at n = 1.
inline Probability joint_best_tail(std::int64_t n, double x, double y) {
    if (n < 1) throw std::invalid_argument("joint_best_tail: n must be >= 1");
    if (!(x >= 0.0) || !(y >= 0.0))
        throw std::invalid_argument("joint_best_tail: x and y must be >= 0");
    const double hi = std::max(x, y);
    const double lo = std::min(x, y);
    // 1 - (1 - e^{-2 hi})^n, kept in log space to hold precision when hi
    // is small (base near 0) or large (result near 0).
    const double head = -std::expm1(double(n) * std::log1p(-std::exp(-2.0 * hi)));
    const double tail = double(n) * std::exp(-hi) * (phi_fn(n, lo) - phi_fn(n, hi));
    return Probability::from_raw(head + tail);
}

/// Transmission outage probability under opportunistic relaying.
///
/// Two-term form: a 1-D integral of g(n,gamma,x) f(x) [Phi((x-mu)/sigma) -
/// Phi(-mu/sigma)] minus a nested integral of n e^{-gamma x} phi_fn(n,
/// gamma y) f(x) f(y) over 0 <= y <= x, with f the normal interference
/// density. Integration runs over the support window clipped to mu +/- 10
/// sigma; the density is left unnormalized over that window, matching the
/// closed form this implements (its small-n bias against simulation is a
/// documented property of the approximation, not of the quadrature).
inline Probability top_opportunistic(std::int64_t n, double gamma, double tau,
                                     const QuadratureConfig& cfg = {}) {
    if (n < 1) throw std::invalid_argument("top_opportunistic: n must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("top_opportunistic: gamma must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("top_opportunistic: tau must be >= 0");
    if (tau == 0.0 || n == 1) return Probability::from_raw(0.0);  // no jammers, no outage

    const NormalApprox na = interference_approx(n, tau);
    if (na.sigma == 0.0) return Probability::from_raw(0.0);
    const double mu = na.mu, sigma = na.sigma;
    const double lo = std::max(0.0, mu - 10.0 * sigma);
    const double hi = std::min(na.support_hi, mu + 10.0 * sigma);
    if (!(lo < hi)) return Probability::from_raw(0.0);

    constexpr double inv_sqrt_2pi = 0.39894228040143267794;
    auto density = [&](double x) {
        const double t = (x - mu) / sigma;
        return std::exp(-0.5 * t * t) * inv_sqrt_2pi / sigma;
    };
    const double cdf_at_zero = normal_cdf(-mu / sigma);

    auto decode_both = [&](double x) {
        const double gx = gamma * x;
        const double pow_n = std::exp(double(n) * std::log1p(-std::exp(-2.0 * gx)));
        return pow_n + double(n) * std::exp(-gx) * phi_fn(n, gx);
    };

    const double term1 = integrate_1d(
        [&](double x) {
            return decode_both(x) * density(x) * (normal_cdf((x - mu) / sigma) - cdf_at_zero);
        },
        lo, hi, cfg);

    QuadratureConfig inner_cfg = cfg;  // one order tighter than the outer
    inner_cfg.rel_tol *= 0.1;
    inner_cfg.abs_tol *= 0.1;
    const double term2 = integrate_1d(
        [&](double x) {
            const double inner = integrate_1d(
                [&](double y) { return phi_fn(n, gamma * y) * density(y); }, lo, x, inner_cfg);
            return double(n) * std::exp(-gamma * x) * density(x) * inner;
        },
        lo, hi, cfg);

    return Probability::from_raw(2.0 * (term1 - term2));
}

/// Survivor function G(m, n, tau, gamma_e): probability that none of m
/// independent eavesdroppers reaches its SIR threshold in one phase.
///
/// G = E[(1 - c^L)^m] with c = 1/(1+gamma_e) and L ~ Binomial(n-1,
/// 1-e^{-tau}), summed directly over L with log-space binomial weights.
/// The equivalent alternating expansion over k = 0..m loses all
/// significance for m beyond a few dozen; this sum has nonnegative terms
/// and is stable for m up to 1e9 and beyond.
inline double survivor_g(std::int64_t m, std::int64_t n, double tau, double gamma_e) {
    if (m < 0) throw std::invalid_argument("survivor_g: m must be >= 0");
    if (n < 1) throw std::invalid_argument("survivor_g: n must be >= 1");
    if (!(tau >= 0.0)) throw std::invalid_argument("survivor_g: tau must be >= 0");
    if (!(gamma_e > 0.0)) throw std::invalid_argument("survivor_g: gamma_e must be > 0");
    if (m == 0) return 1.0;
    if (tau == 0.0 || n == 1) return 0.0;  // nobody jams, every eavesdropper decodes

    const double ln_c = -std::log1p(gamma_e);
    const double ln_p = std::log(-std::expm1(-tau));  // ln(1 - e^{-tau})
    const double ln_q = -tau;
    const std::int64_t nn = n - 1;
    const double lg_top = log_gamma(double(nn) + 1.0);
    double sum = 0.0;
    for (std::int64_t l = 1; l <= nn; ++l) {
        const double lw = lg_top - log_gamma(double(l) + 1.0) - log_gamma(double(nn - l) + 1.0) +
                          double(l) * ln_p + double(nn - l) * ln_q;
        const double c_l = std::exp(double(l) * ln_c);
        sum += std::exp(lw + double(m) * std::log1p(-c_l));
    }
    return std::min(sum, 1.0);
}

/// Secrecy outage probability, identical for both relay-selection schemes:
/// the jamming rule does not depend on which relay carries the message.
inline Probability sop(std::int64_t n, std::int64_t m, double tau, double gamma_e) {
    const double g = survivor_g(m, n, tau, gamma_e);
    return Probability::from_raw(1.0 - g * g);
}

/// Transmission outage probability under uniform random relay selection.
/// Exact closed form; the two hops are independent for a randomly chosen
/// relay, so no interference approximation enters.
inline Probability top_random(std::int64_t n, double gamma, double tau) {
    if (n < 1) throw std::invalid_argument("top_random: n must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("top_random: gamma must be > 0");
    if (!(tau >= 0.0)) throw std::invalid_argument("top_random: tau must be >= 0");
    const double exponent = 2.0 * double(n) - 2.0;
    if (exponent == 0.0 || tau == 0.0) return Probability::from_raw(0.0);
    const double base = std::exp(-tau) + (-std::expm1(-(1.0 + gamma) * tau)) / (1.0 + gamma);
    return Probability::from_raw(-std::expm1(exponent * std::log(base)));
}

}  // namespace jamtol
