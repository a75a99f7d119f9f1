// jamtol: closed-form and simulated outage probabilities for a two-hop
// relay network with threshold-triggered cooperative jamming, plus the
// eavesdropper-tolerance solver and CSV grid sweeps.
//
// Subcommands: top, sop, simulate, capability, sweep. Single commands
// print one JSON record on stdout; sweep writes a CSV and a JSON manifest.
// Every command is deterministic given its flags (and seed).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "jamtol/jamtol.hpp"
#include "sweep.hpp"

using nlohmann::json;
using namespace jamtol;

namespace {

struct ThresholdFlags {
    std::optional<double> gamma;
    std::optional<double> rate;

    double resolve(double fallback) const {
        if (rate) return rate_to_threshold(*rate);
        if (gamma) return *gamma;
        return fallback;
    }
};

void add_gamma_flags(CLI::App* cmd, ThresholdFlags& legit, ThresholdFlags& eaves) {
    auto* g = cmd->add_option("--gamma", legit.gamma, "SIR threshold at legitimate receivers");
    auto* r = cmd->add_option("--rate", legit.rate, "codeword rate; converted to 2^rate - 1");
    g->excludes(r);
    r->excludes(g);
    auto* ge = cmd->add_option("--gamma-e", eaves.gamma, "SIR threshold at eavesdroppers");
    auto* re = cmd->add_option("--rate-e", eaves.rate, "rate difference; converted to 2^rate - 1");
    ge->excludes(re);
    re->excludes(ge);
}

void emit(const json& record) { std::cout << record.dump() << "\n"; }

int emit_error(json record, const std::exception& e) {
    record["error"] = e.what();
    if (const auto* q = dynamic_cast<const QuadratureError*>(&e)) {
        record["best_estimate"] = q->best_estimate();
        record["error_bound"] = q->error_bound();
        record["panels_used"] = q->panels_used();
    }
    std::cout << record.dump() << "\n";
    return 2;
}

void put_probability(json& record, const char* key, const Probability& p) {
    record[key] = p.value;
    if (p.clamp_excess > 0.0) record["clamp_excess"] = p.clamp_excess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probabilities and eavesdropper tolerance for a two-hop "
                 "jamming-assisted relay network"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    std::string scheme_name = "opportunistic";
    std::int64_t n = 0, m = 0;
    double tau = 0.0;
    ThresholdFlags legit, eaves;
    double eps_t = 0.0, eps_s = 0.0;
    std::optional<double> tau_override;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string spec_path, out_path;

    auto* top_cmd = app.add_subcommand("top", "closed-form transmission outage probability");
    top_cmd->add_option("--scheme", scheme_name)->check(CLI::IsMember({"opportunistic", "random"}));
    top_cmd->add_option("--n", n, "number of relays")->required();
    top_cmd->add_option("--tau", tau, "noise-generating threshold")->required();
    add_gamma_flags(top_cmd, legit, eaves);

    auto* sop_cmd = app.add_subcommand("sop", "closed-form secrecy outage probability "
                                              "(identical for both schemes)");
    sop_cmd->add_option("--n", n, "number of relays")->required();
    sop_cmd->add_option("--m", m, "number of eavesdroppers")->required();
    sop_cmd->add_option("--tau", tau, "noise-generating threshold")->required();
    add_gamma_flags(sop_cmd, legit, eaves);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo outage estimates");
    sim_cmd->add_option("--scheme", scheme_name)->check(CLI::IsMember({"opportunistic", "random"}));
    sim_cmd->add_option("--n", n, "number of relays")->required();
    sim_cmd->add_option("--m", m, "number of eavesdroppers");
    sim_cmd->add_option("--tau", tau, "noise-generating threshold")->required();
    add_gamma_flags(sim_cmd, legit, eaves);
    sim_cmd->add_option("--trials", trials, "number of transmissions");
    sim_cmd->add_option("--seed", seed, "master seed");
    sim_cmd->add_option("--threads", threads, "worker threads (result independent of this)");

    auto* cap_cmd = app.add_subcommand("capability", "maximum tolerable eavesdropper count");
    cap_cmd->add_option("--scheme", scheme_name)->check(CLI::IsMember({"opportunistic", "random"}));
    cap_cmd->add_option("--n", n, "number of relays")->required();
    add_gamma_flags(cap_cmd, legit, eaves);
    auto* et = cap_cmd->add_option("--eps-t", eps_t, "reliability constraint on TOP");
    cap_cmd->add_option("--eps-s", eps_s, "security constraint on SOP")->required();
    cap_cmd->add_option("--tau-override", tau_override,
                        "skip the reliability solve and evaluate at this tau");

    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter grid to CSV");
    sweep_cmd->add_option("--spec", spec_path, "sweep spec JSON file")->required();
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
    sweep_cmd->add_option("--seed", seed, "override the spec's seed");
    sweep_cmd->add_option("--threads", threads, "worker threads (result independent of this)");

    CLI11_PARSE(app, argc, argv);

    const double gamma = legit.resolve(10.0);
    const double gamma_e = eaves.resolve(0.5);

    if (top_cmd->parsed()) {
        const Scheme scheme = scheme_from_string(scheme_name);
        json record{{"command", "top"}, {"scheme", scheme_name}, {"n", n},
                    {"tau", tau},       {"gamma", gamma}};
        try {
            const Probability p = scheme == Scheme::Opportunistic
                                      ? top_opportunistic(n, gamma, tau)
                                      : top_random(n, gamma, tau);
            put_probability(record, "top", p);
        } catch (const std::exception& e) {
            return emit_error(record, e);
        }
        emit(record);
        return 0;
    }

    if (sop_cmd->parsed()) {
        json record{{"command", "sop"}, {"n", n}, {"m", m}, {"tau", tau}, {"gamma_e", gamma_e}};
        try {
            put_probability(record, "sop", sop(n, m, tau, gamma_e));
        } catch (const std::exception& e) {
            return emit_error(record, e);
        }
        emit(record);
        return 0;
    }

    if (sim_cmd->parsed()) {
        json record{{"command", "simulate"}, {"scheme", scheme_name}, {"n", n},
                    {"m", m},                {"tau", tau},            {"gamma", gamma},
                    {"gamma_e", gamma_e},    {"trials", trials},      {"seed", seed}};
        try {
            SimJob job;
            job.config = NetworkConfig{n, m, gamma, gamma_e, tau};
            job.scheme = scheme_from_string(scheme_name);
            job.trials = trials;
            job.master_seed = seed;
            const SimResult r = estimate(job, threads);
            record["top"] = {{"p_hat", r.top.p_hat}, {"std_error", r.top.std_error}};
            record["sop"] = {{"p_hat", r.sop.p_hat}, {"std_error", r.sop.std_error}};
        } catch (const std::exception& e) {
            return emit_error(record, e);
        }
        emit(record);
        return 0;
    }

    if (cap_cmd->parsed()) {
        json record{{"command", "capability"}, {"scheme", scheme_name}, {"n", n},
                    {"gamma", gamma},          {"gamma_e", gamma_e},    {"eps_s", eps_s}};
        if (!tau_override) record["eps_t"] = eps_t;
        try {
            const Scheme scheme = scheme_from_string(scheme_name);
            CapabilityResult res;
            if (tau_override) {
                record["tau_override"] = *tau_override;
                res = capability_at_tau(scheme, n, gamma, gamma_e, eps_s, *tau_override);
            } else {
                if (et->count() == 0)
                    throw std::invalid_argument("capability: --eps-t required unless --tau-override is given");
                res = capability(scheme, n, gamma, gamma_e, Constraints{eps_t, eps_s});
            }
            record["tau_opt"] = res.tau_opt;
            record["m_star"] = res.m_star;
            record["top_at_tau"] = res.top_at_tau;
            record["g_at_mstar"] = res.g_at_mstar;
            record["g_at_mstar_plus1"] = res.g_at_mstar_plus1;
            record["tau_constraint_binding"] = res.tau_constraint_binding;
            record["m_capped"] = res.m_capped;
        } catch (const std::exception& e) {
            return emit_error(record, e);
        }
        emit(record);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        json record{{"command", "sweep"}, {"spec", spec_path}, {"out", out_path}};
        try {
            std::ifstream in(spec_path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot read sweep spec: " + spec_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            const std::string spec_bytes = buf.str();

            sweep::SweepSpec spec = sweep::parse_spec(json::parse(spec_bytes));
            if (sweep_cmd->count("--seed") > 0) spec.seed = seed;

            std::ofstream csv(out_path, std::ios::binary);
            if (!csv) throw std::runtime_error("cannot write CSV: " + out_path);
            const sweep::SweepOutcome outcome = sweep::run_sweep(spec, csv, threads);
            csv.close();

            char hash[32];
            std::snprintf(hash, sizeof(hash), "0x%016llx",
                          static_cast<unsigned long long>(sweep::fnv1a64(spec_bytes)));
            json manifest{{"tool", "jamtol"},
                          {"tool_version", version},
                          {"spec_path", spec_path},
                          {"spec_hash_fnv1a64", hash},
                          {"seed", spec.seed},
                          {"rows", outcome.rows},
                          {"failed_rows", outcome.failed_rows},
                          {"csv", out_path}};
            std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
            if (!mf) throw std::runtime_error("cannot write manifest");
            mf << manifest.dump(2) << "\n";

            record["rows"] = outcome.rows;
            record["failed_rows"] = outcome.failed_rows;
            emit(record);
            return outcome.failed_rows == 0 ? 0 : 2;
        } catch (const std::exception& e) {
            return emit_error(record, e);
        }
    }

    return 0;
}
