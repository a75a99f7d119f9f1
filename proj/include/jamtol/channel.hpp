#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace jamtol {

/// How the message relay is picked each transmission.
enum class Scheme { Opportunistic, Random };

inline const char* to_string(Scheme s) {
    return s == Scheme::Opportunistic ? "opportunistic" : "random";
}

inline Scheme scheme_from_string(const std::string& s) {
    if (s == "opportunistic") return Scheme::Opportunistic;
    if (s == "random") return Scheme::Random;
    throw std::invalid_argument("unknown scheme '" + s + "' (expected opportunistic|random)");
}

/// Full parameter set for one scenario. All channels are unit-mean
/// exponential and the network is interference limited, so there is no
/// transmit-power field anywhere: it cancels out of every SIR.
struct NetworkConfig {
    std::int64_t n = 1;     // relays
    std::int64_t m = 0;     // eavesdroppers
    double gamma = 10.0;    // legitimate SIR threshold
    double gamma_e = 0.5;   // eavesdropper SIR threshold
    double tau = 0.0;       // noise-generating threshold

    void validate() const {
        if (n < 1) throw std::invalid_argument("NetworkConfig: n must be >= 1");
        if (m < 0) throw std::invalid_argument("NetworkConfig: m must be >= 0");
        if (!(gamma > 0.0)) throw std::invalid_argument("NetworkConfig: gamma must be > 0");
        if (!(gamma_e > 0.0)) throw std::invalid_argument("NetworkConfig: gamma_e must be > 0");
        if (!(tau >= 0.0)) throw std::invalid_argument("NetworkConfig: tau must be >= 0");
    }
};

/// One trial's channel gains. Matrices are row-major with one row per
/// relay: element (j, e) sits at index j*m + e.
struct ChannelRealization {
    std::vector<double> s_to_relay;             // n
    std::vector<double> relay_to_d;             // n
    std::vector<double> jammer_to_best;         // n (entry for the selected relay unused)
    std::vector<double> s_to_eaves;             // m
    std::vector<double> best_to_eaves;          // m
    std::vector<double> jammer_to_eaves_phase1; // n x m
    std::vector<double> jammer_to_eaves_phase2; // n x m
};

/// Index of the relay maximizing min(source-side gain, destination-side
/// gain). Ties (a measure-zero event for continuous fading) go to the
/// lowest index.
inline std::size_t select_best_relay(std::span<const double> s_to_relay,
                                     std::span<const double> relay_to_d) {
    if (s_to_relay.empty() || s_to_relay.size() != relay_to_d.size())
        throw std::invalid_argument("select_best_relay: gain vectors must be non-empty and equal length");
    std::size_t best = 0;
    double best_min = std::min(s_to_relay[0], relay_to_d[0]);
    for (std::size_t j = 1; j < s_to_relay.size(); ++j) {
        const double mj = std::min(s_to_relay[j], relay_to_d[j]);
        if (mj > best_min) {
            best_min = mj;
            best = j;
        }
    }
    return best;
}

/// Relays that jam this phase: every j != excluded whose gain to the
/// current legitimate receiver is strictly below tau.
inline std::vector<std::size_t> jammer_set(std::span<const double> gains_to_receiver,
                                           std::size_t excluded, double tau) {
    if (excluded >= gains_to_receiver.size())
        throw std::invalid_argument("jammer_set: excluded index out of range");
    if (!(tau >= 0.0))
        throw std::invalid_argument("jammer_set: tau must be >= 0");
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < gains_to_receiver.size(); ++j)
        if (j != excluded && gains_to_receiver[j] < tau) members.push_back(j);
    return members;
}

/// Signal-to-interference ratio from a total interference power.
/// An empty (zero) interference sum means the receiver decodes for sure,
/// so 0/0 is +infinity by convention.
inline double sir_from_total(double signal_gain, double interference_total) {
    if (!(signal_gain >= 0.0) || !(interference_total >= 0.0))
        throw std::invalid_argument("sir: gains must be >= 0");
    if (interference_total == 0.0) return std::numeric_limits<double>::infinity();
    return signal_gain / interference_total;
}

inline double sir(double signal_gain, std::span<const double> interferer_gains) {
    double total = 0.0;
    for (double g : interferer_gains) {
        if (!(g >= 0.0)) throw std::invalid_argument("sir: gains must be >= 0");
        total += g;
    }
    return sir_from_total(signal_gain, total);
}

/// Wyner code rate to SIR threshold: 2^rate - 1.
inline double rate_to_threshold(double rate) {
    if (!(rate >= 0.0))
        throw std::invalid_argument("rate_to_threshold: rate must be >= 0");
    return std::expm1(rate * 0.6931471805599453094);
}

}  // namespace jamtol
