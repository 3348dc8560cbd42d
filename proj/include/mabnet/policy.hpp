#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mabnet/beliefs.hpp"
#include "mabnet/rng.hpp"

namespace mabnet {

/// Inflation term f(t) inside the exploration bonus: a nonnegative,
/// nondecreasing, sublogarithmic function of the round index.
struct InflationFunction {
    enum class Kind { constant, log_log_time, zero };

    Kind kind = Kind::zero;
    double value = 0.0;  // only meaningful for Kind::constant

    static InflationFunction constant(double c) {
        if (!(c >= 0.0)) throw std::invalid_argument("inflation constant must be >= 0");
        return {Kind::constant, c};
    }
    static InflationFunction log_log_time() { return {Kind::log_log_time, 0.0}; }
    static InflationFunction zero() { return {Kind::zero, 0.0}; }

    bool operator==(const InflationFunction&) const = default;
};

/// Parameters of one agent's sampling rule.  num_agents enters through the
/// scaled deviation sigma_i = sqrt(K) * sigma'_i used in the index.
struct PolicyConfig {
    double xi = 1.1;
    InflationFunction inflation = InflationFunction::zero();
    int num_agents = 1;

    void validate() const {
        if (!(xi > 1.0)) throw std::invalid_argument("policy: xi must be strictly greater than 1");
        if (num_agents < 1) throw std::invalid_argument("policy: num_agents must be >= 1");
        if (inflation.kind == InflationFunction::Kind::constant && !(inflation.value >= 0.0))
            throw std::invalid_argument("policy: constant inflation must be >= 0");
    }

    double sigma_scale() const { return std::sqrt(static_cast<double>(num_agents)); }
};

/// f(t).  Nondecreasing in t; zero for t <= 2 in the log-log case.
inline double inflation_value(const PolicyConfig& cfg, double t) {
    switch (cfg.inflation.kind) {
        case InflationFunction::Kind::constant:
            return cfg.inflation.value;
        case InflationFunction::Kind::log_log_time:
            if (t <= 2.0) return 0.0;
            return std::max(0.0, std::log(std::log(t)));
        case InflationFunction::Kind::zero:
            return 0.0;
    }
    return 0.0;
}

/// Exploration bonus
///   C = sigma_i * sqrt( 2(xi+1) * (N + f(t))/N * log(t)/N ).
/// Requires N >= 1; an arm with N = 0 must go through the cold-start path.
inline double exploration_bonus(double sigma_i, double xi, std::int64_t obs_count, double f_t,
                                double t) {
    if (obs_count < 1)
        throw std::invalid_argument("exploration bonus undefined for an unobserved arm");
    if (!(t >= 1.0)) throw std::invalid_argument("exploration bonus: round index must be >= 1");
    const double n = static_cast<double>(obs_count);
    return sigma_i * std::sqrt(2.0 * (xi + 1.0) * ((n + f_t) / n) * (std::log(t) / n));
}

inline double ucb_index(double mean_estimate, double bonus) { return mean_estimate + bonus; }

/// Arm selection at evaluation time t (the statistics' time index, i.e. the
/// number of completed rounds when the choice is made, floored at 1).
///
/// Unseen arms (N = 0) have an undefined index and take absolute priority:
/// one is chosen uniformly at random among them.  Otherwise the argmax of the
/// UCB index is returned, ties broken uniformly.  Exactly one tie-break draw
/// is consumed per call, so stream consumption is constant per round.
inline int select_arm(const AgentBeliefs& beliefs, const PolicyConfig& cfg,
                      const std::vector<double>& sigma_primes, std::int64_t t, Rng& tie_break) {
    const int num_arms = beliefs.num_arms();
    static thread_local std::vector<int> candidates;
    candidates.clear();

    for (int i = 0; i < num_arms; ++i)
        if (beliefs.obs_count(i) == 0) candidates.push_back(i);

    if (candidates.empty()) {
        const double f_t = inflation_value(cfg, static_cast<double>(t));
        const double scale = cfg.sigma_scale();
        double best = 0.0;
        for (int i = 0; i < num_arms; ++i) {
            const double bonus = exploration_bonus(scale * sigma_primes[i], cfg.xi,
                                                   beliefs.obs_count(i), f_t,
                                                   static_cast<double>(t));
            const double q = ucb_index(beliefs.empirical_mean(i), bonus);
            if (candidates.empty() || q > best) {
                best = q;
                candidates.clear();
                candidates.push_back(i);
            } else if (q == best) {
                candidates.push_back(i);
            }
        }
    }

    return candidates[tie_break.next_below(candidates.size())];
}

}  // namespace mabnet
