#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "jamtol/channel.hpp"
#include "jamtol/rng.hpp"

namespace jamtol {

struct TrialOutcome {
    bool transmission_outage = false;
    bool secrecy_outage = false;
    double sir_phase1 = 0.0;  // at the message relay
    double sir_phase2 = 0.0;  // at the destination
    std::size_t best_index = 0;
};

struct OutageEstimate {
    double p_hat = 0.0;
    std::uint64_t trials = 0;
    double std_error = 0.0;  // sqrt(p_hat (1 - p_hat) / trials)
};

struct SimJob {
    NetworkConfig config;
    Scheme scheme = Scheme::Opportunistic;
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
};

struct SimResult {
    OutageEstimate top;
    OutageEstimate sop;
};

namespace detail {

struct TrialWorkspace {
    std::vector<double> s_to_relay;
    std::vector<double> relay_to_d;
    std::vector<double> jammer_to_best;
    std::vector<std::size_t> r1;
    std::vector<std::size_t> r2;
};

// Protocol for one transmission. Phase 1: the source transmits to the
// selected relay while relays with a weak channel to that relay jam.
// Phase 2: the relay forwards to the destination while relays with a weak
// channel to the destination jam. The destination-side gains drawn here
// serve relay selection, jammer membership and phase-2 interference alike;
// only the jammer-to-eavesdropper gains are redrawn per phase.
inline TrialOutcome run_trial_ws(const NetworkConfig& cfg, Scheme scheme,
                                 std::uint64_t trial_seed, TrialWorkspace& ws) {
    using rng::Stream;
    const rng::TrialRng r(trial_seed);
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    const std::size_t m = static_cast<std::size_t>(cfg.m);

    ws.s_to_relay.resize(n);
    ws.relay_to_d.resize(n);
    ws.jammer_to_best.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        ws.s_to_relay[j] = r.unit_exp(Stream::SrcToRelay, j);
        ws.relay_to_d[j] = r.unit_exp(Stream::RelayToDst, j);
        ws.jammer_to_best[j] = r.unit_exp(Stream::RelayToBest, j);
    }

    std::size_t b;
    if (scheme == Scheme::Opportunistic) {
        b = select_best_relay(ws.s_to_relay, ws.relay_to_d);
    } else {
        b = static_cast<std::size_t>(r.uniform(Stream::RelayPick, 0) * double(n));
        if (b >= n) b = n - 1;  // u < 1 makes this unreachable, kept as a hard bound
    }

    ws.r1.clear();
    ws.r2.clear();
    double i1 = 0.0, i2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == b) continue;
        if (ws.jammer_to_best[j] < cfg.tau) {
            ws.r1.push_back(j);
            i1 += ws.jammer_to_best[j];
        }
        if (ws.relay_to_d[j] < cfg.tau) {
            ws.r2.push_back(j);
            i2 += ws.relay_to_d[j];
        }
    }

    TrialOutcome out;
    out.best_index = b;
    out.sir_phase1 = sir_from_total(ws.s_to_relay[b], i1);
    out.sir_phase2 = sir_from_total(ws.relay_to_d[b], i2);
    out.transmission_outage = out.sir_phase1 < cfg.gamma || out.sir_phase2 < cfg.gamma;

    // Secrecy: outage as soon as any eavesdropper reaches its threshold in
    // either phase. Draws are random-access, so stopping early leaves every
    // other variate untouched.
    for (std::size_t e = 0; e < m && !out.secrecy_outage; ++e) {
        double ie1 = 0.0;
        for (std::size_t j : ws.r1) ie1 += r.unit_exp(Stream::JamEvePhase1, j * m + e);
        if (sir_from_total(r.unit_exp(Stream::SrcToEve, e), ie1) >= cfg.gamma_e) {
            out.secrecy_outage = true;
            break;
        }
        double ie2 = 0.0;
        for (std::size_t j : ws.r2) ie2 += r.unit_exp(Stream::JamEvePhase2, j * m + e);
        if (sir_from_total(r.unit_exp(Stream::BestToEve, e), ie2) >= cfg.gamma_e)
            out.secrecy_outage = true;
    }
    return out;
}

}  // namespace detail

/// One transmission, deterministic in (config, scheme, trial_seed).
inline TrialOutcome run_trial(const NetworkConfig& cfg, Scheme scheme,
                              std::uint64_t trial_seed) {
    cfg.validate();
    detail::TrialWorkspace ws;
    return detail::run_trial_ws(cfg, scheme, trial_seed, ws);
}

/// Materialize the full set of gains behind one trial. Shares the draw
/// indexing with run_trial, so the realization shown here is exactly what
/// the trial consumed (plus the matrix entries the early exits skipped).
inline ChannelRealization draw_realization(const NetworkConfig& cfg,
                                           std::uint64_t trial_seed) {
    using rng::Stream;
    cfg.validate();
    const rng::TrialRng r(trial_seed);
    const std::size_t n = static_cast<std::size_t>(cfg.n);
    const std::size_t m = static_cast<std::size_t>(cfg.m);
    ChannelRealization cr;
    cr.s_to_relay.resize(n);
    cr.relay_to_d.resize(n);
    cr.jammer_to_best.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cr.s_to_relay[j] = r.unit_exp(Stream::SrcToRelay, j);
        cr.relay_to_d[j] = r.unit_exp(Stream::RelayToDst, j);
        cr.jammer_to_best[j] = r.unit_exp(Stream::RelayToBest, j);
    }
    cr.s_to_eaves.resize(m);
    cr.best_to_eaves.resize(m);
    cr.jammer_to_eaves_phase1.resize(n * m);
    cr.jammer_to_eaves_phase2.resize(n * m);
    for (std::size_t e = 0; e < m; ++e) {
        cr.s_to_eaves[e] = r.unit_exp(Stream::SrcToEve, e);
        cr.best_to_eaves[e] = r.unit_exp(Stream::BestToEve, e);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t e = 0; e < m; ++e) {
            cr.jammer_to_eaves_phase1[j * m + e] = r.unit_exp(Stream::JamEvePhase1, j * m + e);
            cr.jammer_to_eaves_phase2[j * m + e] = r.unit_exp(Stream::JamEvePhase2, j * m + e);
        }
    }
    return cr;
}

/// Empirical TOP and SOP over job.trials transmissions. Per-trial seeds
/// come from hashing (master_seed, trial index); outage counts are exact
/// integers reduced commutatively, so the result is bit-identical for any
/// worker count.
inline SimResult estimate(const SimJob& job, unsigned threads = 0) {
    job.config.validate();
    if (job.trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");

    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (std::uint64_t(workers) > job.trials) workers = unsigned(job.trials);

    std::vector<std::uint64_t> top_counts(workers, 0), sop_counts(workers, 0);
    auto worker_fn = [&](unsigned w) {
        detail::TrialWorkspace ws;
        const std::uint64_t begin = job.trials * w / workers;
        const std::uint64_t end = job.trials * (w + 1) / workers;
        std::uint64_t tc = 0, sc = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            const TrialOutcome o = detail::run_trial_ws(
                job.config, job.scheme, rng::derive_trial_seed(job.master_seed, t), ws);
            tc += o.transmission_outage ? 1 : 0;
            sc += o.secrecy_outage ? 1 : 0;
        }
        top_counts[w] = tc;
        sop_counts[w] = sc;
    };

    if (workers == 1) {
        worker_fn(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn, w);
        for (auto& th : pool) th.join();
    }

    std::uint64_t top_total = 0, sop_total = 0;
    for (unsigned w = 0; w < workers; ++w) {
        top_total += top_counts[w];
        sop_total += sop_counts[w];
    }

    auto make_estimate = [&](std::uint64_t count) {
        OutageEstimate e;
        e.trials = job.trials;
        e.p_hat = double(count) / double(job.trials);
        e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / double(job.trials));
        return e;
    };
    return SimResult{make_estimate(top_total), make_estimate(sop_total)};
}

/// Sample mean and standard deviation of the per-phase total interference
/// (sum of the below-tau gains among n-1 independent draws).
inline std::pair<double, double> estimate_interference_moments(std::int64_t n, double tau,
                                                               std::uint64_t samples,
                                                               std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("estimate_interference_moments: n must be >= 1");
    if (!(tau >= 0.0)) throw std::invalid_argument("estimate_interference_moments: tau must be >= 0");
    if (samples < 2) throw std::invalid_argument("estimate_interference_moments: samples must be >= 2");
    if (tau == 0.0 || n == 1) return {0.0, 0.0};

    const std::size_t draws = static_cast<std::size_t>(n - 1);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const rng::TrialRng r(rng::derive_trial_seed(seed, s));
        double total = 0.0;
        for (std::size_t j = 0; j < draws; ++j) {
            const double g = r.unit_exp(rng::Stream::RelayToBest, j);
            if (g < tau) total += g;
        }
        sum += total;
        sum_sq += total * total;
    }
    const double mean = sum / double(samples);
    const double var = (sum_sq - double(samples) * mean * mean) / double(samples - 1);
    return {mean, std::sqrt(std::max(var, 0.0))};
}

}  // namespace jamtol
