#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jamtol/analytic.hpp"
#include "jamtol/montecarlo.hpp"
#include "oracles.hpp"

using namespace jamtol;

TEST_CASE("interference_approx trivial and formula cases", "[analytic]") {
    const NormalApprox zero = interference_approx(50, 0.0);
    CHECK(zero.mu == 0.0);
    CHECK(zero.sigma == 0.0);
    CHECK(zero.atom_mass == 1.0);

    const NormalApprox one_relay = interference_approx(1, 2.0);
    CHECK(one_relay.mu == 0.0);
    CHECK(one_relay.support_hi == 0.0);

    // Direct substitution at n = 50, tau = 0.1.
    const double tau = 0.1, k = 49.0;
    const NormalApprox a = interference_approx(50, tau);
    const double mu_want = k * (1.0 - 1.1 * std::exp(-0.1));
    const double var_want =
        k * (1.0 - tau * tau * std::exp(-tau) - (1.0 + tau) * (1.0 + tau) * std::exp(-2.0 * tau));
    CHECK(std::fabs(a.mu - mu_want) <= 1e-12 * mu_want);
    CHECK(std::fabs(a.sigma - std::sqrt(var_want)) <= 1e-10 * a.sigma);
    CHECK(std::fabs(a.support_hi - 4.9) <= 1e-12);
    CHECK(std::fabs(a.atom_mass - std::exp(-4.9)) <= 1e-15);
    CHECK(a.mu <= a.support_hi);
}

TEST_CASE("interference_approx small-tau evaluation stays exact", "[analytic]") {
    // Across the series/closed-form crossover the leading behavior is
    // mu ~ k tau^2/2 and var ~ k tau^3/3.
    for (double tau : {1e-6, 1e-4, 5e-3, 0.009999, 0.010001, 0.02}) {
        const NormalApprox a = interference_approx(1000, tau);
        const double k = 999.0;
        CHECK(std::fabs(a.mu - k * tau * tau / 2.0) <= 0.01 * k * tau * tau);
        const double var = a.sigma * a.sigma;
        CHECK(std::fabs(var - k * tau * tau * tau / 3.0) <= 0.01 * k * tau * tau * tau);
    }
}

TEST_CASE("interference moments match simulation", "[analytic]") {
    const NormalApprox a = interference_approx(50, 0.1);
    const auto [mean, sd] = estimate_interference_moments(50, 0.1, 1000000, 77);
    CHECK(std::fabs(mean - a.mu) <= 0.01 * a.mu);
    CHECK(std::fabs(sd - a.sigma) <= 0.02 * a.sigma);
}

TEST_CASE("joint_best_tail closed forms", "[analytic]") {
    CHECK(joint_best_tail(7, 0.0, 0.0).value == 1.0);
    // n = 1: two independent unit exponentials.
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0})
        for (double y : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0})
            CHECK(std::fabs(joint_best_tail(1, x, y).value - std::exp(-(x + y))) <= 1e-12);
}

TEST_CASE("joint_best_tail is symmetric", "[analytic]") {
    for (std::int64_t n : {2, 5, 17})
        for (double x : {0.0, 0.3, 1.1})
            for (double y : {0.05, 0.8, 2.0})
                CHECK(joint_best_tail(n, x, y).value == joint_best_tail(n, y, x).value);
}

TEST_CASE("joint_best_tail matches a brute-force selection oracle", "[analytic]") {
    // Draw the max-min selection directly and count both tails.
    const std::uint64_t draws = 10000000;
    for (std::int64_t n : {3, 5}) {
        const double x = 0.8, y = 0.3;
        oracles::Mt64 rng(400 + std::uint64_t(n));
        std::uint64_t hits = 0;
        const std::size_t relays = std::size_t(n);
        std::vector<double> s(relays), d(relays);
        for (std::uint64_t t = 0; t < draws; ++t) {
            std::size_t best = 0;
            double best_min = -1.0;
            for (std::size_t j = 0; j < relays; ++j) {
                s[j] = rng.unit_exp();
                d[j] = rng.unit_exp();
                const double mj = std::min(s[j], d[j]);
                if (mj > best_min) {
                    best_min = mj;
                    best = j;
                }
            }
            if (s[best] >= x && d[best] >= y) ++hits;
        }
        const double p_hat = double(hits) / double(draws);
        const double want = joint_best_tail(n, x, y).value;
        const double se = std::sqrt(want * (1.0 - want) / double(draws));
        INFO("n=" << n << " p_hat=" << p_hat << " want=" << want);
        CHECK(std::fabs(p_hat - want) <= 4.0 * se);
    }
}

TEST_CASE("joint_best_tail domain errors", "[analytic]") {
    CHECK_THROWS_AS(joint_best_tail(0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(joint_best_tail(3, -0.1, 0.1), std::invalid_argument);
}

TEST_CASE("top_opportunistic reference values", "[analytic]") {
    CHECK(top_opportunistic(40, 10.0, 0.0).value == 0.0);
    CHECK(std::fabs(top_opportunistic(80, 10.0, 0.075).value - 0.46645) <= 2e-3);
    CHECK(std::fabs(top_opportunistic(30, 10.0, 0.075).value - 0.07329) <= 1e-3);
}

TEST_CASE("top_opportunistic nested integral agrees with the collapsed route", "[analytic]") {
    // The inner exponential-times-normal integral has a closed form, which
    // turns the nested term into a single integral. Same quantity, different
    // algebra: a strong consistency check on the quadrature arrangement.
    for (auto [n, gamma, tau] : {std::tuple<std::int64_t, double, double>{30, 10.0, 0.075},
                                 {60, 10.0, 0.05},
                                 {15, 2.0, 0.3}}) {
        const NormalApprox na = interference_approx(n, tau);
        const double mu = na.mu, sigma = na.sigma;
        const double lo = std::max(0.0, mu - 10.0 * sigma);
        const double hi = std::min(na.support_hi, mu + 10.0 * sigma);
        const double inv_s2pi = 0.39894228040143267794 / sigma;
        auto density = [&](double x) {
            const double t = (x - mu) / sigma;
            return std::exp(-0.5 * t * t) * inv_s2pi;
        };
        const double cdf0 = normal_cdf(-mu / sigma);
        auto decode_both = [&](double x) {
            const double gx = gamma * x;
            return std::exp(double(n) * std::log1p(-std::exp(-2.0 * gx))) +
                   double(n) * std::exp(-gx) * phi_fn(n, gx);
        };
        const double term1 = integrate_1d(
            [&](double x) { return decode_both(x) * density(x) * (normal_cdf((x - mu) / sigma) - cdf0); },
            lo, hi);
        // integral over y <= x <= hi of e^{-gamma x} f(x) collapses to a
        // shifted normal CDF difference
        const double shift = std::exp(0.5 * gamma * gamma * sigma * sigma - gamma * mu);
        const double mu_t = mu - gamma * sigma * sigma;
        const double cdf_hi = normal_cdf((hi - mu_t) / sigma);
        const double term2 = integrate_1d(
            [&](double y) {
                return phi_fn(n, gamma * y) * density(y) * double(n) * shift *
                       (cdf_hi - normal_cdf((y - mu_t) / sigma));
            },
            lo, hi);
        const double collapsed = 2.0 * (term1 - term2);
        const double nested = top_opportunistic(n, gamma, tau).value;
        INFO("n=" << n << " gamma=" << gamma << " tau=" << tau);
        CHECK(std::fabs(nested - collapsed) <= 1e-6 * std::max(collapsed, 1e-6));
    }
}

TEST_CASE("top_opportunistic nondecreasing in tau", "[analytic]") {
    for (auto [n, gamma] : {std::pair<std::int64_t, double>{10, 1.0}, {25, 10.0}}) {
        double prev = -1.0;
        for (int i = 0; i <= 50; ++i) {
            const double tau = 0.01 * i;
            const double v = top_opportunistic(n, gamma, tau).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("top probabilities clamp within tolerance", "[analytic]") {
    for (std::int64_t n : {5, 20, 60})
        for (double tau : {0.02, 0.1, 0.4}) {
            const Probability p = top_opportunistic(n, 10.0, tau);
            CHECK(p.clamp_excess <= 1e-6);
            CHECK(p.value >= 0.0);
            CHECK(p.value <= 1.0);
        }
}

TEST_CASE("survivor_g hand values", "[analytic]") {
    CHECK(survivor_g(0, 17, 0.3, 0.5) == 1.0);
    // n = 2, tau = ln 2: one candidate jammer active with probability 1/2;
    // with gamma_e = 1 a lone jammer blocks the eavesdropper with
    // probability 1/2, so G = 1/2 * 1/2.
    CHECK(std::fabs(survivor_g(1, 2, std::log(2.0), 1.0) - 0.25) <= 1e-15);
    CHECK(survivor_g(3, 40, 0.0, 0.5) == 0.0);
}

TEST_CASE("survivor_g matches the alternating-sum oracle while it is stable", "[analytic]") {
    for (std::int64_t m : {1, 2, 5, 10, 20, 30}) {
        for (auto [n, tau, ge] : {std::tuple<std::int64_t, double, double>{60, 0.05, 0.5},
                                  {10, 0.5, 1.0},
                                  {200, 0.02, 0.25}}) {
            const double want = double(oracles::survivor_alternating_sum(m, n, tau, ge));
            const double got = survivor_g(m, n, tau, ge);
            INFO("m=" << m << " n=" << n << " tau=" << tau);
            CHECK(std::fabs(got - want) <= 1e-9);
        }
    }
}

TEST_CASE("survivor_g stays finite and ordered for extreme m", "[analytic]") {
    const double g1 = survivor_g(1000, 60, 0.05, 0.5);
    const double g2 = survivor_g(100000, 60, 0.05, 0.5);
    const double g3 = survivor_g(1000000000, 60, 0.05, 0.5);
    CHECK(g1 >= g2);
    CHECK(g2 >= g3);
    CHECK(g3 >= 0.0);
    CHECK(g1 <= 1.0);
}

TEST_CASE("sop edge cases and bounds", "[analytic]") {
    CHECK(sop(60, 0, 0.05, 0.5).value == 0.0);
    CHECK(sop(60, 5, 0.0, 0.5).value == 1.0);
    const double v = sop(60, 100, 0.05, 0.5).value;
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
}

TEST_CASE("sop nonincreasing in tau, nondecreasing in m", "[analytic]") {
    for (std::int64_t n : {20, 60}) {
        double prev = 2.0;
        for (int i = 0; i <= 60; ++i) {
            const double v = sop(n, 50, 0.01 * i, 0.5).value;
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
        prev = -1.0;
        for (std::int64_t m : {0, 1, 2, 5, 10, 30, 100, 500, 2000}) {
            const double v = sop(n, m, 0.1, 0.5).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("top_random closed form", "[analytic]") {
    CHECK(top_random(10, 1.0, 0.0).value == 0.0);
    CHECK(top_random(1, 5.0, 2.0).value == 0.0);  // no other relay can jam
    // tau -> infinity limit: 1 - (1+gamma)^-(2n-2)
    const double limit = -std::expm1(-18.0 * std::log1p(1.0));
    CHECK(std::fabs(top_random(10, 1.0, 50.0).value - limit) <= 1e-12);
}

TEST_CASE("top_random nondecreasing in tau", "[analytic]") {
    for (auto [n, gamma] : {std::pair<std::int64_t, double>{10, 1.0}, {40, 10.0}}) {
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double v = top_random(n, gamma, 0.01 * i).value;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
}
