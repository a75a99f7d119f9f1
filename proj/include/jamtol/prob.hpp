#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace jamtol {

/// A probability value, clamped to [0,1] on construction.
///
/// Closed-form outage expressions are evaluated with quadrature and can
/// land epsilon-outside the unit interval; `from_raw` clamps and records
/// how much was removed so callers can inspect (and tests can bound) the
/// clamp magnitude.
struct Probability {
    double value = 0.0;         // in [0,1]
    double clamp_excess = 0.0;  // |raw - value|, 0 when raw was already in range

    static Probability from_raw(double raw) {
        if (std::isnan(raw))
            throw std::invalid_argument("Probability: raw value is NaN");
        Probability p;
        if (raw < 0.0) {
            p.value = 0.0;
            p.clamp_excess = -raw;
        } else if (raw > 1.0) {
            p.value = 1.0;
            p.clamp_excess = raw - 1.0;
        } else {
            p.value = raw;
        }
        return p;
    }
};

}  // namespace jamtol
