#pragma once

// Grid sweeps: expand a JSON spec into a cartesian parameter grid, evaluate
// the requested outputs per point, and write one CSV row per point plus a
// JSON manifest. Rows appear in canonical axis order (n, m, tau, gamma,
// gamma_e, eps_t, eps_s; last axis fastest), so a spec always produces the
// same bytes.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "jamtol/jamtol.hpp"

namespace jamtol::sweep {

using nlohmann::json;

enum class Param { N, M, Tau, Gamma, GammaE, EpsT, EpsS };

inline constexpr std::array<Param, 7> canonical_order = {
    Param::N, Param::M, Param::Tau, Param::Gamma, Param::GammaE, Param::EpsT, Param::EpsS};

inline const char* param_name(Param p) {
    switch (p) {
        case Param::N: return "n";
        case Param::M: return "m";
        case Param::Tau: return "tau";
        case Param::Gamma: return "gamma";
        case Param::GammaE: return "gamma_e";
        case Param::EpsT: return "eps_t";
        case Param::EpsS: return "eps_s";
    }
    return "?";
}

inline bool param_is_integer(Param p) { return p == Param::N || p == Param::M; }

struct SweepSpec {
    Scheme scheme = Scheme::Opportunistic;
    std::map<Param, std::vector<double>> axes;  // canonical order via std::map key order
    std::vector<std::string> outputs;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
};

inline std::vector<double> parse_axis(const std::string& name, const json& v) {
    std::vector<double> values;
    if (v.is_number()) {
        values.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number())
                throw std::invalid_argument("sweep axis '" + name + "': list entries must be numbers");
            values.push_back(e.get<double>());
        }
    } else if (v.is_object()) {
        if (!v.contains("start") || !v.contains("stop") || !v.contains("step"))
            throw std::invalid_argument("sweep axis '" + name + "': range needs start/stop/step");
        const double start = v.at("start").get<double>();
        const double stop = v.at("stop").get<double>();
        const double step = v.at("step").get<double>();
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("sweep axis '" + name + "': need step > 0 and stop >= start");
        for (double x = start; x <= stop + 1e-9 * step; x += step) values.push_back(x);
    } else {
        throw std::invalid_argument("sweep axis '" + name + "': expected number, list or range");
    }
    if (values.empty())
        throw std::invalid_argument("sweep axis '" + name + "': empty");
    return values;
}

inline SweepSpec parse_spec(const json& j) {
    SweepSpec spec;
    if (!j.is_object()) throw std::invalid_argument("sweep spec: top level must be an object");
    spec.scheme = scheme_from_string(j.value("scheme", std::string("opportunistic")));
    if (!j.contains("axes") || !j.at("axes").is_object() || j.at("axes").empty())
        throw std::invalid_argument("sweep spec: needs a non-empty 'axes' object");
    for (const auto& [key, value] : j.at("axes").items()) {
        bool known = false;
        for (Param p : canonical_order) {
            if (key == param_name(p)) {
                spec.axes[p] = parse_axis(key, value);
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("sweep spec: unknown axis '" + key + "'");
    }
    if (!j.contains("outputs") || !j.at("outputs").is_array() || j.at("outputs").empty())
        throw std::invalid_argument("sweep spec: needs a non-empty 'outputs' list");
    for (const auto& o : j.at("outputs")) spec.outputs.push_back(o.get<std::string>());
    spec.trials = j.value("trials", std::uint64_t{100000});
    spec.seed = j.value("seed", std::uint64_t{0});
    if (spec.trials < 1) throw std::invalid_argument("sweep spec: trials must be >= 1");

    bool wants_mc = false, wants_cap = false, wants_top = false, wants_sop = false;
    for (const auto& o : spec.outputs) {
        if (o == "top_mc" || o == "sop_mc") wants_mc = true;
        else if (o == "capability") wants_cap = true;
        else if (o == "top_analytic") wants_top = true;
        else if (o == "sop_analytic") wants_sop = true;
        else throw std::invalid_argument("sweep spec: unknown output '" + o + "'");
    }

    // Fill conventional defaults where a requested output needs a value.
    auto need = [&](Param p, std::optional<double> fallback) {
        if (spec.axes.count(p)) return;
        if (fallback) {
            spec.axes[p] = {*fallback};
            return;
        }
        throw std::invalid_argument(std::string("sweep spec: output requires axis or value for '") +
                                    param_name(p) + "'");
    };
    need(Param::N, std::nullopt);
    need(Param::Gamma, 10.0);
    need(Param::GammaE, 0.5);
    if (wants_top || wants_sop || wants_mc) need(Param::Tau, std::nullopt);
    if (wants_sop || wants_mc) need(Param::M, 0.0);
    if (wants_cap) {
        need(Param::EpsT, std::nullopt);
        need(Param::EpsS, std::nullopt);
    }

    for (const auto& [p, values] : spec.axes) {
        for (double v : values) {
            if (param_is_integer(p) && v != std::floor(v))
                throw std::invalid_argument(std::string("sweep axis '") + param_name(p) +
                                            "': values must be integers");
        }
    }
    return spec;
}

struct GridPoint {
    std::map<Param, double> value;
};

inline std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
    std::vector<GridPoint> grid;
    grid.push_back(GridPoint{});
    for (Param p : canonical_order) {
        auto it = spec.axes.find(p);
        if (it == spec.axes.end()) continue;
        std::vector<GridPoint> next;
        next.reserve(grid.size() * it->second.size());
        for (const GridPoint& g : grid) {
            for (double v : it->second) {
                GridPoint gp = g;
                gp.value[p] = v;
                next.push_back(std::move(gp));
            }
        }
        grid = std::move(next);
    }
    return grid;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

struct RowResult {
    std::map<std::string, std::string> cells;
    std::string error;
};

inline RowResult evaluate_row(const SweepSpec& spec, const GridPoint& gp, std::uint64_t row_seed) {
    RowResult row;
    const auto get = [&](Param p) {
        const auto it = gp.value.find(p);
        if (it == gp.value.end())
            throw std::invalid_argument(std::string("missing parameter '") + param_name(p) + "'");
        return it->second;
    };
    try {
        const std::int64_t n = std::int64_t(get(Param::N));
        const double gamma = get(Param::Gamma);
        const double gamma_e = get(Param::GammaE);
        bool mc_done = false;
        for (const std::string& o : spec.outputs) {
            if (o == "top_analytic") {
                const double tau = get(Param::Tau);
                const Probability p = spec.scheme == Scheme::Opportunistic
                                          ? top_opportunistic(n, gamma, tau)
                                          : top_random(n, gamma, tau);
                row.cells["top_analytic"] = format_double(p.value);
            } else if (o == "sop_analytic") {
                row.cells["sop_analytic"] = format_double(
                    sop(n, std::int64_t(get(Param::M)), get(Param::Tau), gamma_e).value);
            } else if ((o == "top_mc" || o == "sop_mc") && !mc_done) {
                SimJob job;
                job.config =
                    NetworkConfig{n, std::int64_t(get(Param::M)), gamma, gamma_e, get(Param::Tau)};
                job.scheme = spec.scheme;
                job.trials = spec.trials;
                job.master_seed = row_seed;
                const SimResult r = estimate(job, 1);  // rows parallelize, trials stay serial
                row.cells["top_mc"] = format_double(r.top.p_hat);
                row.cells["top_mc_stderr"] = format_double(r.top.std_error);
                row.cells["sop_mc"] = format_double(r.sop.p_hat);
                row.cells["sop_mc_stderr"] = format_double(r.sop.std_error);
                mc_done = true;
            } else if (o == "capability") {
                const Constraints cons{get(Param::EpsT), get(Param::EpsS)};
                const CapabilityResult c = capability(spec.scheme, n, gamma, gamma_e, cons);
                row.cells["tau_opt"] = format_double(c.tau_opt);
                row.cells["m_star"] = std::to_string(c.m_star);
                row.cells["top_at_tau"] = format_double(c.top_at_tau);
                row.cells["g_at_mstar"] = format_double(c.g_at_mstar);
                row.cells["g_at_mstar_plus1"] = format_double(c.g_at_mstar_plus1);
                row.cells["tau_constraint_binding"] = c.tau_constraint_binding ? "1" : "0";
                row.cells["m_capped"] = c.m_capped ? "1" : "0";
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

inline std::vector<std::string> output_columns(const SweepSpec& spec) {
    std::vector<std::string> cols;
    bool mc_added = false;
    for (const std::string& o : spec.outputs) {
        if (o == "top_analytic" || o == "sop_analytic") {
            cols.push_back(o);
        } else if ((o == "top_mc" || o == "sop_mc") && !mc_added) {
            cols.insert(cols.end(), {"top_mc", "top_mc_stderr", "sop_mc", "sop_mc_stderr"});
            mc_added = true;
        } else if (o == "capability") {
            cols.insert(cols.end(), {"tau_opt", "m_star", "top_at_tau", "g_at_mstar",
                                     "g_at_mstar_plus1", "tau_constraint_binding", "m_capped"});
        }
    }
    return cols;
}

struct SweepOutcome {
    std::uint64_t rows = 0;
    std::uint64_t failed_rows = 0;
};

inline SweepOutcome run_sweep(const SweepSpec& spec, std::ostream& csv, unsigned threads) {
    const std::vector<GridPoint> grid = expand_grid(spec);
    std::vector<RowResult> rows(grid.size());

    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    if (workers > grid.size()) workers = unsigned(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker_fn = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            rows[i] = evaluate_row(spec, grid[i], rng::derive_trial_seed(spec.seed, i));
        }
    };
    if (workers <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
        for (auto& th : pool) th.join();
    }

    std::vector<Param> param_cols;
    for (Param p : canonical_order)
        if (spec.axes.count(p)) param_cols.push_back(p);
    const std::vector<std::string> out_cols = output_columns(spec);

    csv << "scheme";
    for (Param p : param_cols) csv << "," << param_name(p);
    for (const auto& c : out_cols) csv << "," << c;
    csv << ",error\n";

    SweepOutcome outcome;
    outcome.rows = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << to_string(spec.scheme);
        for (Param p : param_cols) {
            const double v = grid[i].value.at(p);
            csv << ",";
            if (param_is_integer(p)) csv << std::int64_t(v);
            else csv << format_double(v);
        }
        for (const auto& c : out_cols) {
            auto it = rows[i].cells.find(c);
            csv << "," << (it != rows[i].cells.end() ? it->second : "");
        }
        csv << "," << csv_escape(rows[i].error) << "\n";
        if (!rows[i].error.empty()) ++outcome.failed_rows;
    }
    return outcome;
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace jamtol::sweep
