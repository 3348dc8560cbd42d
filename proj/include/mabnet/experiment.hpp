#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mabnet/analysis.hpp"
#include "mabnet/scenario.hpp"
#include "mabnet/simulator.hpp"

namespace mabnet {

/// Shortest-but-precise decimal formatting for CSV cells (12 significant
/// digits), identical bytes for identical doubles.
inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Everything run_experiment computed, for callers that want the numbers
/// rather than the files.
struct ExperimentResult {
    ScenarioConfig config;
    MonteCarloSummary mc;
    std::vector<double> epsilon;          // NaN if undefined (isolated agent)
    std::vector<int> predicted_rank;      // competition ranking, 0 if undefined
    std::vector<RankGroup> ranking;       // empty if undefined
    RankAgreementReport agreement;        // meaningful only if ranking nonempty
    bool ranking_defined = false;
    std::vector<double> sample_bounds;    // [K*N], +inf on optimal arm, NaN if T < 2
    std::string report_text;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace detail

/// regret.csv: `t,agent,mean_cum_regret,stderr`, t ascending then agent
/// ascending, agents 1-based.
inline std::string render_regret_csv(const MonteCarloSummary& mc) {
    std::string out = "t,agent,mean_cum_regret,stderr\n";
    for (std::int64_t t = 1; t <= mc.horizon; ++t)
        for (int k = 0; k < mc.num_agents; ++k) {
            out += std::to_string(t);
            out += ',';
            out += std::to_string(k + 1);
            out += ',';
            out += format_value(mc.mean_regret_at(t, k));
            out += ',';
            out += format_value(mc.stderr_at(t, k));
            out += '\n';
        }
    return out;
}

inline void emit_regret_csv(const MonteCarloSummary& mc, const std::filesystem::path& path) {
    if (mc.horizon < 1 || mc.num_agents < 1)
        throw std::invalid_argument("regret csv: empty curves");
    detail::write_file(path, render_regret_csv(mc));
}

inline std::string render_summary_csv(const ExperimentResult& r) {
    const int K = r.mc.num_agents;
    const int N = r.mc.num_arms;
    std::string out = "agent,p,epsilon,predicted_rank,mean_regret_T,stderr_T";
    for (int i = 0; i < N; ++i) out += ",mean_n_arm" + std::to_string(i + 1);
    for (int i = 0; i < N; ++i) out += ",bound_n_arm" + std::to_string(i + 1);
    out += '\n';
    for (int k = 0; k < K; ++k) {
        out += std::to_string(k + 1);
        out += ',' + format_value(r.config.sociability[k]);
        out += ',' + format_value(r.epsilon[k]);
        out += ',' + std::to_string(r.predicted_rank[k]);
        out += ',' + format_value(r.mc.mean_regret_at(r.mc.horizon, k));
        out += ',' + format_value(r.mc.stderr_at(r.mc.horizon, k));
        for (int i = 0; i < N; ++i) out += ',' + format_value(r.mc.mean_pulls(k, i));
        for (int i = 0; i < N; ++i)
            out += ',' + format_value(r.sample_bounds[static_cast<std::size_t>(k) * N + i]);
        out += '\n';
    }
    return out;
}

inline std::string render_ranking(const std::vector<RankGroup>& groups) {
    std::string out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g) out += " < ";
        if (groups[g].agents.size() > 1) {
            out += '{';
            for (std::size_t i = 0; i < groups[g].agents.size(); ++i) {
                if (i) out += ", ";
                out += std::to_string(groups[g].agents[i] + 1);
            }
            out += '}';
        } else {
            out += std::to_string(groups[g].agents[0] + 1);
        }
    }
    return out;
}

/// Runs the scenario end to end: Monte Carlo simulation, performance
/// measures, predicted-vs-empirical rank agreement and sample-count bounds;
/// writes regret.csv, summary.csv and report.txt into out_dir.
inline ExperimentResult run_experiment(const ScenarioConfig& cfg,
                                       const std::filesystem::path& out_dir,
                                       const std::string& overrides_echo = "",
                                       int num_threads = 0) {
    validate_scenario(cfg);
    const BanditInstance inst = make_instance(cfg);
    const ObservationNetwork net = make_network(cfg);
    const std::vector<PolicyConfig> policies = make_policies(cfg, net);
    const int K = net.num_agents();
    const int N = inst.num_arms();

    ExperimentResult r;
    r.config = cfg;
    r.mc = run_monte_carlo(inst, net, policies, cfg.horizon, cfg.runs, cfg.seed, num_threads);

    r.epsilon.assign(K, std::numeric_limits<double>::quiet_NaN());
    r.predicted_rank.assign(K, 0);
    r.ranking_defined = true;
    for (int k = 0; k < K; ++k) {
        if (net.degree(k) == 0) {
            r.ranking_defined = false;
            continue;
        }
        r.epsilon[k] = performance_measure(net, k);
    }
    if (r.ranking_defined) {
        r.ranking = predicted_ranking(net);
        int rank = 1;
        for (const auto& group : r.ranking) {
            for (int k : group.agents) r.predicted_rank[k] = rank;
            rank += static_cast<int>(group.agents.size());
        }
    }

    // Theorem-2 sample-count bounds at the horizon, per agent and arm.
    const std::vector<double> arm_gaps = gaps(inst);
    const BoundParams params{cfg.zeta, cfg.policy.xi, K};
    r.sample_bounds.assign(static_cast<std::size_t>(K) * N,
                           std::numeric_limits<double>::quiet_NaN());
    if (cfg.horizon >= 2) {
        const double scale = std::sqrt(static_cast<double>(K));
        for (int k = 0; k < K; ++k) {
            const double f_T = inflation_value(policies[k], static_cast<double>(cfg.horizon));
            for (int i = 0; i < N; ++i) {
                const double sigma_i = scale * std::sqrt(inst.variance_proxy(i));
                r.sample_bounds[static_cast<std::size_t>(k) * N + i] =
                    arm_gaps[i] == 0.0
                        ? std::numeric_limits<double>::infinity()
                        : expected_samples_bound(params, sigma_i, arm_gaps[i], f_T, cfg.horizon);
            }
        }
    }

    std::vector<double> terminal_means(K), terminal_ses(K);
    for (int k = 0; k < K; ++k) {
        terminal_means[k] = r.mc.mean_regret_at(cfg.horizon, k);
        terminal_ses[k] = r.mc.stderr_at(cfg.horizon, k);
    }
    if (r.ranking_defined && cfg.horizon >= 1)
        r.agreement = rank_agreement(r.ranking, terminal_means, terminal_ses);

    // Report.
    std::ostringstream rep;
    rep << "scenario: " << cfg.name << "\n";
    rep << "agents: " << K << ", arms: " << N << ", horizon: " << cfg.horizon
        << ", runs: " << cfg.runs << ", seed: " << cfg.seed << "\n";
    rep << "policy: xi=" << format_value(cfg.policy.xi) << ", inflation=";
    switch (cfg.policy.inflation) {
        case ScenarioPolicy::Inflation::epsilon_pm: rep << "epsilon_pm"; break;
        case ScenarioPolicy::Inflation::constant:
            rep << "constant(" << format_value(cfg.policy.constant_value) << ")";
            break;
        case ScenarioPolicy::Inflation::log_log_time: rep << "log_log_time"; break;
        case ScenarioPolicy::Inflation::zero: rep << "zero"; break;
    }
    rep << "\nbounds: zeta=" << format_value(cfg.zeta)
        << ", delta_prime_factor=" << format_value(cfg.delta_prime_factor) << "\n";
    if (!overrides_echo.empty()) rep << "overrides: " << overrides_echo << "\n";
    rep << "\nagent   p       epsilon     pred_rank  mean_regret_T  stderr_T\n";
    for (int k = 0; k < K; ++k) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-7d %-7.3g %-11.6g %-10d %-14.6g %-10.4g\n", k + 1,
                      cfg.sociability[k], r.epsilon[k], r.predicted_rank[k], terminal_means[k],
                      terminal_ses[k]);
        rep << line;
    }
    if (r.ranking_defined) {
        rep << "\npredicted ranking (ascending epsilon): " << render_ranking(r.ranking) << "\n";
        std::vector<int> by_regret(K);
        for (int k = 0; k < K; ++k) by_regret[k] = k;
        std::sort(by_regret.begin(), by_regret.end(),
                  [&](int a, int b) { return terminal_means[a] < terminal_means[b]; });
        rep << "empirical ranking (ascending terminal regret):";
        for (int k : by_regret) rep << ' ' << (k + 1);
        rep << "\nrank agreement: " << (r.agreement.strict_pairs_agree ? "AGREE" : "DISAGREE")
            << " (distinguishable pairs: " << r.agreement.distinguishable_pairs
            << ", concordant: " << r.agreement.concordant_pairs
            << ", kendall tau distance: " << r.agreement.kendall_tau_distance << ")\n";
    } else {
        rep << "\npredicted ranking: not defined (network has an isolated agent)\n";
    }
    if (cfg.horizon >= 2) {
        double worst_ratio = 0.0;
        bool ok = true;
        for (int k = 0; k < K; ++k)
            for (int i = 0; i < N; ++i) {
                if (arm_gaps[i] == 0.0) continue;
                const double bound = r.sample_bounds[static_cast<std::size_t>(k) * N + i];
                const double ratio = r.mc.mean_pulls(k, i) / bound;
                worst_ratio = std::max(worst_ratio, ratio);
                if (ratio > 1.0) ok = false;
            }
        char line[160];
        std::snprintf(line, sizeof(line),
                      "sample-count bound: %s (max empirical/bound ratio %.4g)\n",
                      ok ? "respected for every agent and suboptimal arm" : "VIOLATED",
                      worst_ratio);
        rep << line;
    }
    r.report_text = rep.str();

    std::filesystem::create_directories(out_dir);
    emit_regret_csv(r.mc, out_dir / "regret.csv");
    detail::write_file(out_dir / "summary.csv", render_summary_csv(r));
    detail::write_file(out_dir / "report.txt", r.report_text);
    return r;
}

}  // namespace mabnet
