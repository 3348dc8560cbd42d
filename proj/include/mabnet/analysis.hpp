#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mabnet/bandit_instance.hpp"
#include "mabnet/observation_network.hpp"
#include "mabnet/policy.hpp"
#include "mabnet/simulator.hpp"

namespace mabnet {

/// Parameters of the concentration and sample-count bounds.  zeta > 1 is the
/// peeling base (any value gives a valid bound; 2 is the library default),
/// xi > 1 the sampling-rule exponent, num_agents the K entering log(Kt) and
/// the sigma_i = sqrt(K) sigma'_i scaling.
struct BoundParams {
    double zeta = 2.0;
    double xi = 1.1;
    int num_agents = 1;

    void validate() const {
        if (!(zeta > 1.0)) throw std::invalid_argument("bounds: zeta must be > 1");
        if (!(xi > 1.0)) throw std::invalid_argument("bounds: xi must be > 1");
        if (num_agents < 1) throw std::invalid_argument("bounds: num_agents must be >= 1");
    }

    double nu() const { return 1.0 / std::log(zeta); }

    /// 1 / (zeta^{1/4} + zeta^{-1/4})^2, strictly below 1/4 for zeta > 1.
    double peeling_factor() const {
        const double q = std::pow(zeta, 0.25);
        return 1.0 / ((q + 1.0 / q) * (q + 1.0 / q));
    }

    double kappa(double sigma_i) const { return peeling_factor() / (sigma_i * sigma_i); }
};

/// Sociability-based performance measure of one agent:
///   eps = 1/(p_k + 1) * sqrt(mean sociability of k's neighbors).
/// Lower predicts lower cumulative regret.  Undefined for isolated agents.
inline double performance_measure(const ObservationNetwork& net, int agent) {
    const int d = net.degree(agent);
    if (d == 0)
        throw std::domain_error("performance measure undefined for isolated agent " +
                                std::to_string(agent + 1));
    double neighbor_sum = 0.0;
    for (int j : net.neighbors(agent)) neighbor_sum += net.sociability(j);
    return (1.0 / (net.sociability(agent) + 1.0)) * std::sqrt(neighbor_sum / d);
}

inline std::vector<double> performance_measures(const ObservationNetwork& net) {
    std::vector<double> out(net.num_agents());
    for (int k = 0; k < net.num_agents(); ++k) out[k] = performance_measure(net, k);
    return out;
}

/// One group of agents sharing (up to tolerance) the same measure value.
struct RankGroup {
    double epsilon = 0.0;
    std::vector<int> agents;  // ascending agent indices
};

/// Agents ordered by ascending performance measure; ties grouped.
inline std::vector<RankGroup> predicted_ranking(const ObservationNetwork& net,
                                                double tie_tolerance = 1e-9) {
    const std::vector<double> eps = performance_measures(net);
    std::vector<int> order(net.num_agents());
    for (int k = 0; k < net.num_agents(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (eps[a] != eps[b]) return eps[a] < eps[b];
        return a < b;
    });

    std::vector<RankGroup> groups;
    for (int k : order) {
        if (groups.empty() || eps[k] - groups.back().epsilon > tie_tolerance)
            groups.push_back({eps[k], {k}});
        else
            groups.back().agents.push_back(k);
    }
    return groups;
}

/// Observation-count threshold past which a suboptimal arm's index cannot
/// dominate by gap alone:
///   eta = 4 sigma^2 (xi+1)/Delta^2 * (1 + sqrt(1 + Delta^2/(2 sigma^2 (xi+1)) * f/log T)) * log T.
inline double eta_threshold(double sigma_i, double delta_i, double xi, double f_T,
                            std::int64_t horizon) {
    if (!(delta_i > 0.0))
        throw std::invalid_argument("eta threshold defined only for suboptimal arms (gap > 0)");
    if (horizon < 2) throw std::invalid_argument("eta threshold: horizon must be >= 2");
    const double log_T = std::log(static_cast<double>(horizon));
    const double lead = 4.0 * sigma_i * sigma_i * (xi + 1.0) / (delta_i * delta_i);
    const double inner = delta_i * delta_i / (2.0 * sigma_i * sigma_i * (xi + 1.0)) * (f_T / log_T);
    return lead * (1.0 + std::sqrt(1.0 + inner)) * log_T;
}

/// Horizon-independent constant of the sample-count bound:
///   Gamma = (1 + log K)/log zeta + (log K / xi + 2/(xi-1)) / (2^xi log zeta).
inline double gamma_constant(double zeta, double xi, int num_agents) {
    if (!(zeta > 1.0) || !(xi > 1.0) || num_agents < 1)
        throw std::invalid_argument("gamma constant requires zeta > 1, xi > 1, K >= 1");
    const double log_zeta = std::log(zeta);
    const double log_K = std::log(static_cast<double>(num_agents));
    return (1.0 + log_K) / log_zeta +
           (log_K / xi + 2.0 / (xi - 1.0)) / (std::pow(2.0, xi) * log_zeta);
}

/// The vanishing middle term of the sample-count bound.
inline double residual_term(double zeta, double xi, int num_agents, std::int64_t horizon) {
    const double T = static_cast<double>(horizon);
    const double log_K = std::log(static_cast<double>(num_agents));
    return (1.0 / (std::pow(T, xi - 1.0) * std::log(zeta))) * (log_K / (T * xi) + 1.0 / (xi - 1.0));
}

/// Upper bound on the expected number of pulls of a suboptimal arm by time T.
inline double expected_samples_bound(const BoundParams& params, double sigma_i, double delta_i,
                                     double f_T, std::int64_t horizon) {
    params.validate();
    return gamma_constant(params.zeta, params.xi, params.num_agents) +
           residual_term(params.zeta, params.xi, params.num_agents, horizon) +
           eta_threshold(sigma_i, delta_i, params.xi, f_T, horizon);
}

/// Upper bound on one agent's expected cumulative regret: the gap-weighted
/// sum of the sample-count bounds over the suboptimal arms.  sigma_i is
/// sqrt(K) sigma'_i per arm.
inline double regret_bound(const BoundParams& params, const BanditInstance& inst, double f_T,
                           std::int64_t horizon) {
    params.validate();
    const std::vector<double> arm_gaps = gaps(inst);
    const double scale = std::sqrt(static_cast<double>(params.num_agents));
    double total = 0.0;
    for (int i = 0; i < inst.num_arms(); ++i) {
        if (arm_gaps[i] == 0.0) continue;
        const double sigma_i = scale * std::sqrt(inst.variance_proxy(i));
        total += arm_gaps[i] * expected_samples_bound(params, sigma_i, arm_gaps[i], f_T, horizon);
    }
    return total;
}

/// Tail-probability bound nu * log(K t) / t^delta.
inline double concentration_bound(const BoundParams& params, double t, double delta) {
    params.validate();
    if (!(t >= 2.0)) throw std::invalid_argument("concentration bound: t must be >= 2");
    if (!(delta > 0.0)) throw std::invalid_argument("concentration bound: delta must be > 0");
    return params.nu() * std::log(static_cast<double>(params.num_agents) * t) / std::pow(t, delta);
}

struct TailProbeResult {
    double frequency = 0.0;  // violations / counted runs
    int counted_runs = 0;
    int excluded_runs = 0;  // runs where the arm was never observed
};

/// Empirical frequency, over M seeded runs, of the event
///   |mu_hat_i^k(t) - mu_i| > sigma_i sqrt(2 delta_total log t / N_i^k(t)),
/// with sigma_i = sqrt(K) sigma'_i and N taken per run.  Runs in which the
/// agent never observed the arm are excluded and reported.
inline TailProbeResult empirical_tail_probability(const BanditInstance& inst,
                                                  const ObservationNetwork& net,
                                                  const std::vector<PolicyConfig>& policies,
                                                  int arm, int agent, std::int64_t t,
                                                  double delta_total, int num_runs,
                                                  std::uint64_t base_seed) {
    if (num_runs < 100)
        throw std::invalid_argument("tail probe: need at least 100 runs for a usable frequency");
    const double sigma_i =
        std::sqrt(static_cast<double>(net.num_agents())) * std::sqrt(inst.variance_proxy(arm));
    const double log_t = t >= 1 ? std::log(static_cast<double>(t)) : 0.0;

    TailProbeResult result;
    int violations = 0;
    for (int r = 0; r < num_runs; ++r) {
        EpisodeResult ep = run_episode(inst, net, policies, t, run_seed_for(base_seed, r));
        const AgentBeliefs& b = ep.final_beliefs[agent];
        if (b.obs_count(arm) == 0) {
            ++result.excluded_runs;
            continue;
        }
        ++result.counted_runs;
        const double radius =
            sigma_i * std::sqrt(2.0 * delta_total * log_t / static_cast<double>(b.obs_count(arm)));
        if (std::abs(b.empirical_mean(arm) - inst.mean(arm)) > radius) ++violations;
    }
    if (result.counted_runs == 0)
        throw std::runtime_error("tail probe: arm was never observed in any run");
    result.frequency = static_cast<double>(violations) / result.counted_runs;
    return result;
}

/// Outcome of comparing a predicted ranking against empirical terminal
/// regrets.  A pair of agents counts only when the prediction is strict
/// (different tie groups) and the empirical means differ by at least two
/// combined standard errors; kendall_tau_distance is the number of such
/// pairs ordered oppositely to the prediction.
struct RankAgreementReport {
    bool strict_pairs_agree = true;
    int kendall_tau_distance = 0;
    int distinguishable_pairs = 0;
    int concordant_pairs = 0;
    std::vector<std::array<int, 2>> violations;  // (predicted-better, predicted-worse)
};

inline RankAgreementReport rank_agreement(const std::vector<RankGroup>& predicted,
                                          const std::vector<double>& empirical_means,
                                          const std::vector<double>& empirical_stderrs) {
    const int num_agents = static_cast<int>(empirical_means.size());
    std::vector<int> group_of(num_agents, -1);
    for (std::size_t g = 0; g < predicted.size(); ++g)
        for (int k : predicted[g].agents) group_of[k] = static_cast<int>(g);
    for (int k = 0; k < num_agents; ++k)
        if (group_of[k] < 0) throw std::invalid_argument("rank agreement: agent sets differ");

    RankAgreementReport report;
    for (int a = 0; a < num_agents; ++a) {
        for (int b = a + 1; b < num_agents; ++b) {
            if (group_of[a] == group_of[b]) continue;  // predicted tie
            const double diff = empirical_means[a] - empirical_means[b];
            const double band = 2.0 * std::hypot(empirical_stderrs[a], empirical_stderrs[b]);
            if (std::abs(diff) < band) continue;  // empirically indistinguishable
            ++report.distinguishable_pairs;
            const bool predicted_a_better = group_of[a] < group_of[b];
            const bool empirical_a_better = diff < 0.0;
            if (predicted_a_better == empirical_a_better) {
                ++report.concordant_pairs;
            } else {
                ++report.kendall_tau_distance;
                report.strict_pairs_agree = false;
                report.violations.push_back(predicted_a_better ? std::array<int, 2>{a, b}
                                                               : std::array<int, 2>{b, a});
            }
        }
    }
    return report;
}

}  // namespace mabnet
