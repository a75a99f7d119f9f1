#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jamtol {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_panels = 4096;
    int panel_order = 16;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: tolerances must be > 0");
        if (max_panels < 1)
            throw std::invalid_argument("QuadratureConfig: max_panels must be >= 1");
        if (panel_order < 2 || panel_order > 64)
            throw std::invalid_argument("QuadratureConfig: panel_order must be in [2,64]");
    }
};

/// Thrown when adaptive refinement exhausts its panel budget. Carries the
/// best available estimate and a bound on its error so callers can decide
/// whether the partial result is usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_bound,
                    int panels_used)
        : std::runtime_error(what + " (best estimate " + std::to_string(best_estimate) +
                             ", error bound " + std::to_string(error_bound) + ", " +
                             std::to_string(panels_used) + " panels)"),
          best_estimate_(best_estimate),
          error_bound_(error_bound),
          panels_used_(panels_used) {}

    double best_estimate() const { return best_estimate_; }
    double error_bound() const { return error_bound_; }
    int panels_used() const { return panels_used_; }

private:
    double best_estimate_;
    double error_bound_;
    int panels_used_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on the Legendre recurrence; standard cosine
/// initial guesses converge in a handful of steps for order <= 64.
inline GaussLegendreRule gauss_legendre_rule(int order) {
    if (order < 2 || order > 64)
        throw std::invalid_argument("gauss_legendre_rule: order must be in [2,64]");
    GaussLegendreRule rule;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            deriv = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / deriv;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

/// Adaptive quadrature over [lo, hi]: fixed-order Gauss-Legendre panels,
/// bisected until the two-level difference on each panel meets the
/// width-prorated absolute tolerance or the relative tolerance.
template <class F>
double integrate_1d(F&& f, double lo, double hi, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi))
        throw std::invalid_argument("integrate_1d: requires finite lo <= hi");
    if (lo == hi) return 0.0;

    const GaussLegendreRule rule = gauss_legendre_rule(cfg.panel_order);
    auto panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        const double halfw = 0.5 * (b - a);
        double s = 0.0;
        for (int i = 0; i < cfg.panel_order; ++i)
            s += rule.weights[i] * f(mid + halfw * rule.nodes[i]);
        return s * halfw;
    };

    struct Segment {
        double a, b;
        double coarse;     // one-panel estimate over [a,b]
        double err_hint;   // share of the parent's two-level difference
    };

    const double total_width = hi - lo;
    std::vector<Segment> pending;
    pending.push_back({lo, hi, panel(lo, hi), 0.0});
    int panels = 1;
    double total = 0.0;
    double err_accum = 0.0;
    // Tolerances are prorated by panel width against the magnitude of the
    // whole integral, not the panel's own value: tail panels carrying a
    // vanishing share must not be refined to full local precision.
    double scale = std::fabs(pending.back().coarse);

    while (!pending.empty()) {
        const Segment seg = pending.back();
        pending.pop_back();

        if (panels + 2 > cfg.max_panels) {
            // Budget exhausted: fold the unrefined segments into the running
            // total so the failure carries a usable estimate.
            double best = total + seg.coarse;
            double bound = err_accum + std::max(seg.err_hint, std::fabs(seg.coarse));
            for (const Segment& rest : pending) {
                best += rest.coarse;
                bound += std::max(rest.err_hint, std::fabs(rest.coarse));
            }
            throw QuadratureError("integrate_1d: panel budget exhausted before convergence",
                                  best, bound, panels);
        }

        const double mid = 0.5 * (seg.a + seg.b);
        const double left = panel(seg.a, mid);
        const double right = panel(mid, seg.b);
        panels += 2;
        const double refined = left + right;
        if (!std::isfinite(refined))
            throw std::invalid_argument("integrate_1d: integrand produced a non-finite value");

        const double diff = std::fabs(refined - seg.coarse);
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * scale) *
                           ((seg.b - seg.a) / total_width);
        if (diff <= tol) {
            total += refined;
            err_accum += diff;
            scale = std::max(scale, std::fabs(total));
        } else {
            pending.push_back({seg.a, mid, left, 0.5 * diff});
            pending.push_back({mid, seg.b, right, 0.5 * diff});
        }
    }
    return total;
}

}  // namespace jamtol
