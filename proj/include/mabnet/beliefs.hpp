#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mabnet {

/// Per-agent running statistics over the arms:
///   obs_count   N_i  — observed pulls of arm i (own pulls plus admitted neighbor pulls)
///   reward_sum  S_i  — sum of rewards over those observations
///   pull_count  n_i  — the agent's own pulls of arm i
/// N_i >= n_i always, since self-observation is unconditional.
class AgentBeliefs {
public:
    explicit AgentBeliefs(int num_arms)
        : obs_counts_(num_arms, 0), pull_counts_(num_arms, 0), reward_sums_(num_arms, 0.0) {}

    int num_arms() const { return static_cast<int>(obs_counts_.size()); }

    void observe(int arm, double reward) {
        obs_counts_[arm] += 1;
        reward_sums_[arm] += reward;
    }

    void record_pull(int arm) { pull_counts_[arm] += 1; }

    std::int64_t obs_count(int arm) const { return obs_counts_[arm]; }
    std::int64_t pull_count(int arm) const { return pull_counts_[arm]; }
    double reward_sum(int arm) const { return reward_sums_[arm]; }

    /// S_i / N_i; only defined once the arm has been observed.
    double empirical_mean(int arm) const {
        if (obs_counts_[arm] == 0)
            throw std::logic_error("empirical mean requested for an unobserved arm");
        return reward_sums_[arm] / static_cast<double>(obs_counts_[arm]);
    }

    std::int64_t total_pulls() const {
        std::int64_t sum = 0;
        for (auto n : pull_counts_) sum += n;
        return sum;
    }

    std::int64_t total_observations() const {
        std::int64_t sum = 0;
        for (auto n : obs_counts_) sum += n;
        return sum;
    }

    bool operator==(const AgentBeliefs& other) const {
        return obs_counts_ == other.obs_counts_ && pull_counts_ == other.pull_counts_ &&
               reward_sums_ == other.reward_sums_;
    }

private:
    std::vector<std::int64_t> obs_counts_;
    std::vector<std::int64_t> pull_counts_;
    std::vector<double> reward_sums_;
};

}  // namespace mabnet
