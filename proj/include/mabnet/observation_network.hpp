#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mabnet {

/// Undirected observation graph plus per-agent sociability probabilities.
///
/// Agents are 0-based internally; file formats and reports use 1-based
/// indices.  Edges are unordered pairs, stored normalized (a < b) and
/// deduplicated.  The observation draws on an edge are directed: agent k sees
/// neighbor j with probability p_k, independently of whether j sees k.
/// Immutable after construction; the constructor enforces all invariants.
class ObservationNetwork {
public:
    using Edge = std::array<int, 2>;

    ObservationNetwork(int num_agents, std::vector<Edge> edges, std::vector<double> sociability)
        : num_agents_(num_agents), sociability_(std::move(sociability)) {
        if (num_agents_ < 1)
            throw std::invalid_argument("network: need at least one agent");
        if (static_cast<int>(sociability_.size()) != num_agents_)
            throw std::invalid_argument("network: sociability vector has length " +
                                        std::to_string(sociability_.size()) + ", expected " +
                                        std::to_string(num_agents_));
        for (int k = 0; k < num_agents_; ++k)
            if (!(sociability_[k] >= 0.0 && sociability_[k] <= 1.0))
                throw std::invalid_argument("network: sociability of agent " + std::to_string(k + 1) +
                                            " outside [0,1]");
        for (auto& e : edges) {
            if (e[0] == e[1])
                throw std::invalid_argument("network: self-loop at agent " + std::to_string(e[0] + 1));
            if (e[0] < 0 || e[1] < 0 || e[0] >= num_agents_ || e[1] >= num_agents_)
                throw std::invalid_argument("network: edge endpoint out of range");
            if (e[0] > e[1]) std::swap(e[0], e[1]);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);

        adjacency_.resize(num_agents_);
        for (const auto& e : edges_) {
            adjacency_[e[0]].push_back(e[1]);
            adjacency_[e[1]].push_back(e[0]);
        }
        for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    }

    /// Complete graph on num_agents vertices.
    static ObservationNetwork complete(int num_agents, std::vector<double> sociability) {
        std::vector<Edge> edges;
        for (int a = 0; a < num_agents; ++a)
            for (int b = a + 1; b < num_agents; ++b) edges.push_back({a, b});
        return ObservationNetwork(num_agents, std::move(edges), std::move(sociability));
    }

    /// Cycle 0-1-...-(K-1)-0; requires at least 3 agents.
    static ObservationNetwork cycle(int num_agents, std::vector<double> sociability) {
        if (num_agents < 3)
            throw std::invalid_argument("network: a cycle needs at least 3 agents");
        std::vector<Edge> edges;
        for (int a = 0; a < num_agents; ++a) edges.push_back({a, (a + 1) % num_agents});
        return ObservationNetwork(num_agents, std::move(edges), std::move(sociability));
    }

    int num_agents() const { return num_agents_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<double>& sociability() const { return sociability_; }
    double sociability(int agent) const { return sociability_[agent]; }

    int degree(int agent) const {
        check_agent(agent);
        return static_cast<int>(adjacency_[agent].size());
    }

    /// Neighbor indices of an agent, ascending; the agent itself is excluded.
    const std::vector<int>& neighbors(int agent) const {
        check_agent(agent);
        return adjacency_[agent];
    }

    bool is_regular(int degree_wanted) const {
        for (int k = 0; k < num_agents_; ++k)
            if (degree(k) != degree_wanted) return false;
        return true;
    }

private:
    void check_agent(int agent) const {
        if (agent < 0 || agent >= num_agents_)
            throw std::out_of_range("network: agent index " + std::to_string(agent) +
                                    " out of range [0," + std::to_string(num_agents_) + ")");
    }

    int num_agents_;
    std::vector<Edge> edges_;
    std::vector<double> sociability_;
    std::vector<std::vector<int>> adjacency_;
};

/// Builds a network from raw parts, throwing if any invariant fails.
inline ObservationNetwork validate_network(int num_agents,
                                           std::vector<ObservationNetwork::Edge> edges,
                                           std::vector<double> sociability) {
    return ObservationNetwork(num_agents, std::move(edges), std::move(sociability));
}

}  // namespace mabnet
