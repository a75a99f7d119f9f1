#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "jamtol/analytic.hpp"
#include "jamtol/channel.hpp"
#include "jamtol/quadrature.hpp"

namespace jamtol {

/// Security (SOP <= eps_s) and reliability (TOP <= eps_t) requirements.
struct Constraints {
    double eps_t = 0.01;
    double eps_s = 0.01;

    void validate() const {
        if (!(eps_t >= 0.0 && eps_t <= 1.0) || !(eps_s >= 0.0 && eps_s <= 1.0))
            throw std::invalid_argument("Constraints: eps_t and eps_s must be in [0,1]");
    }
};

/// Search caps. e^{-50} is far below every formula's sensitivity, and a
/// tolerance beyond 1e9 eavesdroppers is outside any physical scenario;
/// hitting either cap raises a flag instead of searching unbounded.
inline constexpr double tau_search_cap = 50.0;
inline constexpr std::int64_t m_search_cap = 1000000000;
inline constexpr double tau_root_tol = 1e-9;

struct TauSolution {
    double tau = 0.0;
    /// False when even maximal jamming keeps TOP below eps_t, i.e. the
    /// reliability constraint never binds and tau is returned at the cap.
    bool constraint_binding = true;
};

struct ToleranceCount {
    std::int64_t m = 0;
    bool capped = false;  // true when the search stopped at m_search_cap
};

namespace detail {

// Bisection for the smallest tau with p(tau) >= eps_t. Valid because both
// outage formulas are nondecreasing in tau. Bracket by doubling from 1e-3.
// width_tol bounds the bisection work; each step also stops early once the
// outage residual itself is within tau_root_tol.
template <class F>
TauSolution solve_tau_monotone(F&& top_of_tau, double eps_t, double width_tol) {
    if (!(eps_t > 0.0 && eps_t < 1.0))
        throw std::invalid_argument("solve_tau: requires 0 < eps_t < 1");
    if (top_of_tau(tau_search_cap) < eps_t) return {tau_search_cap, false};

    double lo = 0.0;         // top(lo) < eps_t (top(0) = 0)
    double hi = 1e-3;
    while (top_of_tau(hi) < eps_t) {
        lo = hi;
        hi *= 2.0;
        if (hi >= tau_search_cap) {
            hi = tau_search_cap;
            break;
        }
    }
    while (hi - lo > width_tol) {
        const double mid = 0.5 * (lo + hi);
        const double p = top_of_tau(mid);
        if (std::fabs(p - eps_t) <= tau_root_tol) return {mid, true};
        (p < eps_t ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), true};
}

}  // namespace detail

/// Largest noise threshold keeping the opportunistic-scheme TOP within
/// eps_t.
inline TauSolution solve_tau_opportunistic(std::int64_t n, double gamma, double eps_t,
                                           const QuadratureConfig& cfg = {}) {
    return detail::solve_tau_monotone(
        [&](double tau) { return top_opportunistic(n, gamma, tau, cfg).value; }, eps_t,
        tau_root_tol);
}

/// Same for the random-selection scheme, via the exact closed form. The
/// formula costs nothing to evaluate, so the bracket is driven near machine
/// width and the returned tau reproduces eps_t to the residual tolerance.
inline TauSolution solve_tau_random(std::int64_t n, double gamma, double eps_t) {
    if (n < 2) throw std::invalid_argument("solve_tau_random: n must be >= 2");
    return detail::solve_tau_monotone(
        [&](double tau) { return top_random(n, gamma, tau).value; }, eps_t, 1e-14);
}

/// Largest m with survivor_g(m) >= sqrt(1 - eps_s): doubling until the
/// first violation, then binary search, valid because G is strictly
/// decreasing in m.
inline ToleranceCount max_tolerable(std::int64_t n, double tau, double gamma_e, double eps_s) {
    if (!(eps_s > 0.0 && eps_s < 1.0))
        throw std::invalid_argument("max_tolerable: requires 0 < eps_s < 1");
    if (!(tau >= 0.0)) throw std::invalid_argument("max_tolerable: tau must be >= 0");
    if (tau == 0.0) return {0, false};

    const double threshold = std::sqrt(1.0 - eps_s);
    auto g = [&](std::int64_t m) { return survivor_g(m, n, tau, gamma_e); };
    if (g(1) < threshold) return {0, false};

    std::int64_t lo = 1;  // g(lo) >= threshold throughout
    std::int64_t hi = 2;
    while (g(hi) >= threshold) {
        lo = hi;
        if (hi >= m_search_cap) return {m_search_cap, true};
        hi = std::min(hi * 2, m_search_cap);
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (g(mid) >= threshold ? lo : hi) = mid;
    }
    return {lo, false};
}

/// Optimal noise threshold, the eavesdropper count it tolerates, and the
/// survivor-function bracket certifying optimality of that count.
struct CapabilityResult {
    Scheme scheme = Scheme::Opportunistic;
    double tau_opt = 0.0;
    std::int64_t m_star = 0;
    double top_at_tau = 0.0;        // should sit at eps_t when the constraint binds
    double g_at_mstar = 1.0;        // >= sqrt(1 - eps_s)
    double g_at_mstar_plus1 = 0.0;  // < sqrt(1 - eps_s) (unless capped)
    bool tau_constraint_binding = true;
    bool m_capped = false;
};

namespace detail {

inline CapabilityResult capability_from_tau(Scheme scheme, std::int64_t n, double gamma,
                                            double gamma_e, double eps_s,
                                            const TauSolution& ts,
                                            const QuadratureConfig& cfg) {
    CapabilityResult res;
    res.scheme = scheme;
    res.tau_opt = ts.tau;
    res.tau_constraint_binding = ts.constraint_binding;
    res.top_at_tau = scheme == Scheme::Opportunistic
                         ? top_opportunistic(n, gamma, ts.tau, cfg).value
                         : top_random(n, gamma, ts.tau).value;
    const ToleranceCount tc = max_tolerable(n, ts.tau, gamma_e, eps_s);
    res.m_star = tc.m;
    res.m_capped = tc.capped;
    res.g_at_mstar = survivor_g(tc.m, n, ts.tau, gamma_e);
    res.g_at_mstar_plus1 = survivor_g(tc.m + 1, n, ts.tau, gamma_e);
    return res;
}

}  // namespace detail

/// Solve the whole problem: push tau to the reliability boundary (TOP =
/// eps_t), then count the eavesdroppers tolerable there. Raising tau can
/// only improve the tolerance while the TOP constraint admits it, so the
/// boundary tau is optimal. Analytic formulas only; no simulation enters.
inline CapabilityResult capability(Scheme scheme, std::int64_t n, double gamma, double gamma_e,
                                   const Constraints& cons, const QuadratureConfig& cfg = {}) {
    cons.validate();
    if (!(cons.eps_t > 0.0 && cons.eps_t < 1.0) || !(cons.eps_s > 0.0 && cons.eps_s < 1.0))
        throw std::invalid_argument("capability: requires 0 < eps_t, eps_s < 1");
    const TauSolution ts = scheme == Scheme::Opportunistic
                               ? solve_tau_opportunistic(n, gamma, cons.eps_t, cfg)
                               : solve_tau_random(n, gamma, cons.eps_t);
    return detail::capability_from_tau(scheme, n, gamma, gamma_e, cons.eps_s, ts, cfg);
}

/// Capability at a caller-supplied tau (no reliability solve). top_at_tau
/// reports the TOP actually incurred there.
inline CapabilityResult capability_at_tau(Scheme scheme, std::int64_t n, double gamma,
                                          double gamma_e, double eps_s, double tau,
                                          const QuadratureConfig& cfg = {}) {
    TauSolution ts{tau, true};
    return detail::capability_from_tau(scheme, n, gamma, gamma_e, eps_s, ts, cfg);
}

}  // namespace jamtol
