#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mabnet {

/// Ground-truth arm set: true means and variance proxies, hidden from agents.
/// Rewards are Gaussian, so the variance proxy equals the reward variance.
/// Immutable after construction.
class BanditInstance {
public:
    BanditInstance(std::vector<double> means, std::vector<double> variance_proxies)
        : means_(std::move(means)), variance_proxies_(std::move(variance_proxies)) {
        if (means_.size() != variance_proxies_.size())
            throw std::invalid_argument("bandit instance: means and variance_proxies differ in length");
        if (means_.size() < 2)
            throw std::invalid_argument("bandit instance: need at least 2 arms, got " +
                                        std::to_string(means_.size()));
        for (double v : variance_proxies_)
            if (!(v > 0.0))
                throw std::invalid_argument("bandit instance: variance proxies must be strictly positive");
    }

    int num_arms() const { return static_cast<int>(means_.size()); }
    const std::vector<double>& means() const { return means_; }
    const std::vector<double>& variance_proxies() const { return variance_proxies_; }
    double mean(int arm) const { return means_[arm]; }
    double variance_proxy(int arm) const { return variance_proxies_[arm]; }

    /// Reward standard deviations sigma'_i, one per arm.
    std::vector<double> reward_stddevs() const {
        std::vector<double> out(means_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(variance_proxies_[i]);
        return out;
    }

private:
    std::vector<double> means_;
    std::vector<double> variance_proxies_;
};

/// Smallest arm index attaining the maximal mean.
inline int optimal_arm(const BanditInstance& inst) {
    int best = 0;
    for (int i = 1; i < inst.num_arms(); ++i)
        if (inst.mean(i) > inst.mean(best)) best = i;
    return best;
}

/// Per-arm gaps: mean of the optimal arm minus each arm's mean.
inline std::vector<double> gaps(const BanditInstance& inst) {
    const double best = inst.mean(optimal_arm(inst));
    std::vector<double> out(inst.num_arms());
    for (int i = 0; i < inst.num_arms(); ++i) out[i] = best - inst.mean(i);
    return out;
}

}  // namespace mabnet
