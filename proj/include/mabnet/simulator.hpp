#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mabnet/bandit_instance.hpp"
#include "mabnet/beliefs.hpp"
#include "mabnet/observation_network.hpp"
#include "mabnet/policy.hpp"
#include "mabnet/rng.hpp"

namespace mabnet {

/// Everything realized in one round: simultaneous choices, the shared reward
/// realization of each pulled arm (NaN for arms nobody pulled), and the
/// directed observation masks.  mask(k,j) says whether agent k saw agent j's
/// pull this round; the diagonal is always true and non-edges always false.
struct RoundOutcome {
    std::int64_t round = 0;
    std::vector<int> choices;                // [K]
    std::vector<double> realized_rewards;    // [N], NaN where unpulled
    std::vector<std::uint8_t> masks;         // [K*K], row = observer
    int num_agents = 0;

    bool mask(int observer, int observed) const {
        return masks[static_cast<std::size_t>(observer) * num_agents + observed] != 0;
    }
};

/// Cumulative expected regret per agent, one row per completed round.
/// The round-t increment for agent k is the gap of the arm k pulled.
struct RegretTrace {
    std::int64_t horizon = 0;
    int num_agents = 0;
    std::uint64_t run_seed = 0;
    std::vector<double> cumulative;  // [T*K], row-major by round

    double at(std::int64_t t, int agent) const {  // t in 1..T
        return cumulative[static_cast<std::size_t>(t - 1) * num_agents + agent];
    }
};

/// Named per-episode randomness streams.
struct EpisodeStreams {
    std::uint64_t reward_seed;
    Rng mask_stream;
    std::vector<Rng> tie_breaks;  // one per agent

    static EpisodeStreams make(std::uint64_t run_seed, int num_agents) {
        EpisodeStreams s{derive_seed(run_seed, streams::rewards),
                         Rng(derive_seed(run_seed, streams::masks)),
                         {}};
        s.tie_breaks.reserve(num_agents);
        for (int k = 0; k < num_agents; ++k)
            s.tie_breaks.emplace_back(derive_seed(run_seed, streams::tie_breaks,
                                                  static_cast<std::uint64_t>(k)));
        return s;
    }
};

/// Directed Bernoulli observation masks for one round.  Entry (k,j) is drawn
/// with probability p_k for each edge {k,j}, independently per direction.
inline std::vector<std::uint8_t> draw_masks(const ObservationNetwork& net, Rng& stream) {
    const int K = net.num_agents();
    std::vector<std::uint8_t> masks(static_cast<std::size_t>(K) * K, 0);
    for (int k = 0; k < K; ++k) {
        masks[static_cast<std::size_t>(k) * K + k] = 1;
        const double p = net.sociability(k);
        for (int j : net.neighbors(k))
            masks[static_cast<std::size_t>(k) * K + j] = stream.next_bernoulli(p) ? 1 : 0;
    }
    return masks;
}

/// Reward realizations X_i^t for the pulled arms of round t.  Each value is
/// addressed by (t, arm), so every agent pulling the same arm sees the same
/// number and the value does not depend on what else was pulled.
inline std::vector<double> draw_round_rewards(const BanditInstance& inst,
                                              const std::vector<std::uint8_t>& pulled,
                                              std::uint64_t reward_seed, std::int64_t t) {
    std::vector<double> rewards(inst.num_arms(), std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < inst.num_arms(); ++i)
        if (pulled[i])
            rewards[i] = gaussian_at(reward_seed, static_cast<std::uint64_t>(t),
                                     static_cast<std::uint64_t>(i), inst.mean(i),
                                     std::sqrt(inst.variance_proxy(i)));
    return rewards;
}

/// One episode in progress.  Rounds are simultaneous-play: every agent
/// chooses from the statistics of the previous rounds, then rewards are
/// realized, masks drawn, and all admitted round-t pulls (neighbors' and own)
/// enter the beliefs before round t+1.
class SimulationRun {
public:
    SimulationRun(BanditInstance inst, ObservationNetwork net,
                  std::vector<PolicyConfig> policies, std::uint64_t run_seed)
        : inst_(std::move(inst)),
          net_(std::move(net)),
          policies_(std::move(policies)),
          streams_(EpisodeStreams::make(run_seed, net_.num_agents())),
          run_seed_(run_seed),
          sigma_primes_(inst_.reward_stddevs()),
          gaps_(gaps(inst_)),
          beliefs_(net_.num_agents(), AgentBeliefs(inst_.num_arms())),
          cumulative_regret_(net_.num_agents(), 0.0) {
        if (static_cast<int>(policies_.size()) != net_.num_agents())
            throw std::invalid_argument("simulation: one policy per agent required");
        for (const auto& p : policies_) p.validate();
    }

    /// Plays the next round and returns its outcome.
    RoundOutcome step() {
        const std::int64_t round = completed_rounds_ + 1;
        const int K = net_.num_agents();
        const int N = inst_.num_arms();

        // Choices at round t use the statistics of round t-1 (cold start at t=1).
        const std::int64_t t_eval = std::max<std::int64_t>(1, completed_rounds_);
        RoundOutcome out;
        out.round = round;
        out.num_agents = K;
        out.choices.resize(K);
        for (int k = 0; k < K; ++k)
            out.choices[k] =
                select_arm(beliefs_[k], policies_[k], sigma_primes_, t_eval, streams_.tie_breaks[k]);

        std::vector<std::uint8_t> pulled(N, 0);
        for (int k = 0; k < K; ++k) pulled[out.choices[k]] = 1;
        out.realized_rewards = draw_round_rewards(inst_, pulled, streams_.reward_seed, round);
        out.masks = draw_masks(net_, streams_.mask_stream);

        for (int k = 0; k < K; ++k) {
            for (int j = 0; j < K; ++j) {
                if (out.masks[static_cast<std::size_t>(k) * K + j]) {
                    const int arm = out.choices[j];
                    beliefs_[k].observe(arm, out.realized_rewards[arm]);
                }
            }
            beliefs_[k].record_pull(out.choices[k]);
            cumulative_regret_[k] += gaps_[out.choices[k]];
        }

        completed_rounds_ = round;
        return out;
    }

    std::int64_t completed_rounds() const { return completed_rounds_; }
    const std::vector<AgentBeliefs>& beliefs() const { return beliefs_; }
    const std::vector<double>& cumulative_regret() const { return cumulative_regret_; }
    std::uint64_t run_seed() const { return run_seed_; }

private:
    BanditInstance inst_;
    ObservationNetwork net_;
    std::vector<PolicyConfig> policies_;
    EpisodeStreams streams_;
    std::uint64_t run_seed_;
    std::vector<double> sigma_primes_;
    std::vector<double> gaps_;
    std::vector<AgentBeliefs> beliefs_;
    std::vector<double> cumulative_regret_;
    std::int64_t completed_rounds_ = 0;
};

struct EpisodeResult {
    RegretTrace trace;
    std::vector<AgentBeliefs> final_beliefs;
};

/// Runs T rounds.  Fully deterministic given (run_seed, inst, net, policies, T).
/// Pass a recorder to capture every RoundOutcome (for replay checks).
inline EpisodeResult run_episode(const BanditInstance& inst, const ObservationNetwork& net,
                                 const std::vector<PolicyConfig>& policies, std::int64_t horizon,
                                 std::uint64_t run_seed,
                                 std::vector<RoundOutcome>* recorder = nullptr) {
    if (horizon < 0) throw std::invalid_argument("episode: horizon must be >= 0");
    SimulationRun run(inst, net, policies, run_seed);
    const int K = net.num_agents();

    EpisodeResult result;
    result.trace.horizon = horizon;
    result.trace.num_agents = K;
    result.trace.run_seed = run_seed;
    result.trace.cumulative.reserve(static_cast<std::size_t>(horizon) * K);

    for (std::int64_t t = 1; t <= horizon; ++t) {
        RoundOutcome out = run.step();
        if (recorder) recorder->push_back(std::move(out));
        for (int k = 0; k < K; ++k) result.trace.cumulative.push_back(run.cumulative_regret()[k]);
    }
    result.final_beliefs = run.beliefs();
    return result;
}

/// Monte Carlo aggregate over M independent episodes.
struct MonteCarloSummary {
    std::int64_t horizon = 0;
    int num_agents = 0;
    int num_arms = 0;
    int num_runs = 0;
    std::uint64_t base_seed = 0;
    std::vector<double> mean_cum_regret;    // [T*K]
    std::vector<double> stderr_cum_regret;  // [T*K]
    std::vector<double> mean_pull_counts;   // [K*N], mean n_i^k(T) over runs

    double mean_regret_at(std::int64_t t, int agent) const {  // t in 1..T
        return mean_cum_regret[static_cast<std::size_t>(t - 1) * num_agents + agent];
    }
    double stderr_at(std::int64_t t, int agent) const {
        return stderr_cum_regret[static_cast<std::size_t>(t - 1) * num_agents + agent];
    }
    double mean_pulls(int agent, int arm) const {
        return mean_pull_counts[static_cast<std::size_t>(agent) * num_arms + arm];
    }
};

/// Seed of Monte Carlo run r.
inline std::uint64_t run_seed_for(std::uint64_t base_seed, int run_index) {
    return derive_seed(base_seed, static_cast<std::uint64_t>(run_index));
}

/// Runs M episodes (run r seeded from (base_seed, r)) and aggregates mean and
/// standard-error regret curves plus mean terminal pull counts.  Episodes may
/// execute on several threads; the reduction always walks runs in ascending
/// order, so the output is bit-identical for any thread count.
inline MonteCarloSummary run_monte_carlo(const BanditInstance& inst, const ObservationNetwork& net,
                                         const std::vector<PolicyConfig>& policies,
                                         std::int64_t horizon, int num_runs,
                                         std::uint64_t base_seed, int num_threads = 0) {
    if (num_runs < 1) throw std::invalid_argument("monte carlo: need at least one run");
    const int K = net.num_agents();
    const int N = inst.num_arms();
    const std::size_t cells = static_cast<std::size_t>(horizon) * K;

    std::vector<std::vector<double>> traces(num_runs);
    std::vector<std::vector<std::int64_t>> pulls(num_runs);

    auto worker = [&](int begin, int end) {
        for (int r = begin; r < end; ++r) {
            EpisodeResult ep = run_episode(inst, net, policies, horizon, run_seed_for(base_seed, r));
            traces[r] = std::move(ep.trace.cumulative);
            auto& counts = pulls[r];
            counts.resize(static_cast<std::size_t>(K) * N);
            for (int k = 0; k < K; ++k)
                for (int i = 0; i < N; ++i)
                    counts[static_cast<std::size_t>(k) * N + i] = ep.final_beliefs[k].pull_count(i);
        }
    };

    int threads = num_threads > 0 ? num_threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, num_runs));
    if (threads == 1) {
        worker(0, num_runs);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (num_runs + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const int begin = w * chunk;
            const int end = std::min(num_runs, begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    MonteCarloSummary summary;
    summary.horizon = horizon;
    summary.num_agents = K;
    summary.num_arms = N;
    summary.num_runs = num_runs;
    summary.base_seed = base_seed;
    summary.mean_cum_regret.assign(cells, 0.0);
    summary.stderr_cum_regret.assign(cells, 0.0);
    summary.mean_pull_counts.assign(static_cast<std::size_t>(K) * N, 0.0);

    for (int r = 0; r < num_runs; ++r)
        for (std::size_t c = 0; c < cells; ++c) summary.mean_cum_regret[c] += traces[r][c];
    for (std::size_t c = 0; c < cells; ++c) summary.mean_cum_regret[c] /= num_runs;

    if (num_runs > 1) {
        for (int r = 0; r < num_runs; ++r)
            for (std::size_t c = 0; c < cells; ++c) {
                const double d = traces[r][c] - summary.mean_cum_regret[c];
                summary.stderr_cum_regret[c] += d * d;
            }
        for (std::size_t c = 0; c < cells; ++c)
            summary.stderr_cum_regret[c] =
                std::sqrt(summary.stderr_cum_regret[c] / (num_runs - 1.0) / num_runs);
    }

    for (int r = 0; r < num_runs; ++r)
        for (std::size_t c = 0; c < summary.mean_pull_counts.size(); ++c)
            summary.mean_pull_counts[c] += static_cast<double>(pulls[r][c]);
    for (auto& v : summary.mean_pull_counts) v /= num_runs;

    return summary;
}

}  // namespace mabnet
