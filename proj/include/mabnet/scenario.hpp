#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mabnet/analysis.hpp"
#include "mabnet/bandit_instance.hpp"
#include "mabnet/observation_network.hpp"
#include "mabnet/policy.hpp"

namespace mabnet {

/// Raised for anything wrong with a scenario file or its contents.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Graph portion of a scenario.  Edge endpoints are 1-based in files.
struct GraphSpec {
    enum class Kind { complete, cycle, edge_list };

    Kind kind = Kind::complete;
    std::vector<std::array<int, 2>> edges;   // 1-based, only for edge_list
    std::optional<int> regular_degree;       // optional d-regularity check

    bool operator==(const GraphSpec&) const = default;
};

/// Scenario-level inflation choice.  epsilon_pm resolves, per agent, to the
/// constant f = eps_p^k computed from the scenario's own network.
struct ScenarioPolicy {
    enum class Inflation { epsilon_pm, constant, log_log_time, zero };

    double xi = 1.1;
    Inflation inflation = Inflation::epsilon_pm;
    double constant_value = 0.0;

    bool operator==(const ScenarioPolicy&) const = default;
};

struct ScenarioConfig {
    std::string name;
    std::vector<double> means;
    std::vector<double> variance_proxies;
    GraphSpec graph;
    std::vector<double> sociability;
    ScenarioPolicy policy;
    std::int64_t horizon = 500;
    int runs = 1000;
    std::uint64_t seed = 1;
    double zeta = 2.0;
    double delta_prime_factor = 0.05;

    int num_agents() const { return static_cast<int>(sociability.size()); }
    int num_arms() const { return static_cast<int>(means.size()); }

    bool operator==(const ScenarioConfig&) const = default;
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"paper-all-to-all", "paper-cyclic",
                                                   "paper-case1", "paper-case2"};
    return names;
}

/// The preset experiment scenarios: a 6-agent 10-armed problem on complete
/// and cyclic graphs, and the 4-agent contrast pair with p = (.5,0,0,0)
/// versus p = (.5,1,1,1).
inline ScenarioConfig preset_scenario(const std::string& name) {
    ScenarioConfig cfg;
    cfg.name = name;
    if (name == "paper-all-to-all" || name == "paper-cyclic") {
        cfg.means = {40, 50, 50, 60, 70, 70, 80, 90, 92, 95};
        cfg.variance_proxies.assign(10, 25.0);
        cfg.sociability = {0.50, 0.85, 0.05, 0.50, 1.00, 0.90};
        cfg.graph.kind =
            name == "paper-cyclic" ? GraphSpec::Kind::cycle : GraphSpec::Kind::complete;
        cfg.policy = {1.1, ScenarioPolicy::Inflation::epsilon_pm, 0.0};
        cfg.horizon = 500;
        cfg.runs = 1000;
    } else if (name == "paper-case1" || name == "paper-case2") {
        cfg.means = {40, 50, 50, 60, 70, 70, 80, 90, 92, 95};
        cfg.variance_proxies.assign(10, 25.0);
        cfg.sociability = name == "paper-case1" ? std::vector<double>{0.5, 0.0, 0.0, 0.0}
                                                : std::vector<double>{0.5, 1.0, 1.0, 1.0};
        cfg.graph.kind = GraphSpec::Kind::complete;
        cfg.policy = {1.1, ScenarioPolicy::Inflation::epsilon_pm, 0.0};
        cfg.horizon = 500;
        cfg.runs = 1000;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return cfg;
}

inline bool is_preset_name(const std::string& name) {
    for (const auto& p : preset_names())
        if (p == name) return true;
    return false;
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                           const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError("scenario: missing field '" + context + key + "'");
    return *it;
}

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key, const std::string& context) {
    try {
        return require_field(j, key, context).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario: bad value for '" + context + key + "': " + e.what());
    }
}

}  // namespace detail

/// Parses a scenario from JSON text.  Field and type problems report the
/// offending key; syntax problems carry the parser's position diagnostics.
inline ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("scenario: " + origin + (origin.empty() ? "" : ": ") + e.what());
    }

    ScenarioConfig cfg;
    cfg.name = j.value("name", origin.empty() ? std::string("scenario") : origin);

    const auto& arms = detail::require_field(j, "arms", "");
    cfg.means = detail::get_field<std::vector<double>>(arms, "means", "arms.");
    cfg.variance_proxies =
        detail::get_field<std::vector<double>>(arms, "variance_proxies", "arms.");

    const auto& graph = detail::require_field(j, "graph", "");
    const std::string type = detail::get_field<std::string>(graph, "type", "graph.");
    if (type == "complete") {
        cfg.graph.kind = GraphSpec::Kind::complete;
    } else if (type == "cycle") {
        cfg.graph.kind = GraphSpec::Kind::cycle;
    } else if (type == "edge_list") {
        cfg.graph.kind = GraphSpec::Kind::edge_list;
        cfg.graph.edges =
            detail::get_field<std::vector<std::array<int, 2>>>(graph, "edges", "graph.");
    } else {
        throw ConfigError("scenario: graph.type must be complete, cycle or edge_list, got '" +
                          type + "'");
    }
    if (graph.contains("regular_degree"))
        cfg.graph.regular_degree = detail::get_field<int>(graph, "regular_degree", "graph.");

    cfg.sociability = detail::get_field<std::vector<double>>(j, "sociability", "");

    const auto& policy = detail::require_field(j, "policy", "");
    cfg.policy.xi = detail::get_field<double>(policy, "xi", "policy.");
    const auto& inflation = detail::require_field(policy, "inflation", "policy.");
    if (inflation.is_string()) {
        const std::string s = inflation.get<std::string>();
        if (s == "epsilon_pm")
            cfg.policy.inflation = ScenarioPolicy::Inflation::epsilon_pm;
        else if (s == "log_log_time")
            cfg.policy.inflation = ScenarioPolicy::Inflation::log_log_time;
        else if (s == "zero")
            cfg.policy.inflation = ScenarioPolicy::Inflation::zero;
        else
            throw ConfigError(
                "scenario: policy.inflation must be epsilon_pm, log_log_time, zero or "
                "{\"constant\": c}, got '" + s + "'");
    } else if (inflation.is_object()) {
        cfg.policy.inflation = ScenarioPolicy::Inflation::constant;
        cfg.policy.constant_value =
            detail::get_field<double>(inflation, "constant", "policy.inflation.");
    } else {
        throw ConfigError("scenario: policy.inflation has an unrecognized shape");
    }

    cfg.horizon = detail::get_field<std::int64_t>(j, "horizon", "");
    cfg.runs = detail::get_field<int>(j, "runs", "");
    cfg.seed = detail::get_field<std::uint64_t>(j, "seed", "");

    if (j.contains("bounds")) {
        const auto& bounds = j.at("bounds");
        if (bounds.contains("zeta")) cfg.zeta = detail::get_field<double>(bounds, "zeta", "bounds.");
        if (bounds.contains("delta_prime_factor"))
            cfg.delta_prime_factor =
                detail::get_field<double>(bounds, "delta_prime_factor", "bounds.");
    }
    return cfg;
}

/// Cross-field consistency checks; throws ConfigError with the failing field.
inline void validate_scenario(const ScenarioConfig& cfg) {
    const int K = cfg.num_agents();
    if (K < 1) throw ConfigError("scenario: sociability must list at least one agent");
    if (cfg.means.size() != cfg.variance_proxies.size())
        throw ConfigError("scenario: arms.means and arms.variance_proxies differ in length");
    if (cfg.num_arms() < 2) throw ConfigError("scenario: need at least 2 arms");
    for (double v : cfg.variance_proxies)
        if (!(v > 0.0)) throw ConfigError("scenario: variance proxies must be positive");
    for (double p : cfg.sociability)
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("scenario: sociability outside [0,1]");
    if (cfg.graph.kind == GraphSpec::Kind::edge_list) {
        for (const auto& e : cfg.graph.edges) {
            if (e[0] < 1 || e[1] < 1 || e[0] > K || e[1] > K)
                throw ConfigError("scenario: graph edge (" + std::to_string(e[0]) + "," +
                                  std::to_string(e[1]) + ") references an agent outside 1.." +
                                  std::to_string(K));
            if (e[0] == e[1])
                throw ConfigError("scenario: graph has a self-loop at agent " +
                                  std::to_string(e[0]));
        }
    }
    if (cfg.graph.kind == GraphSpec::Kind::cycle && K < 3)
        throw ConfigError("scenario: a cycle graph needs at least 3 agents");
    if (!(cfg.policy.xi > 1.0)) throw ConfigError("scenario: policy.xi must be > 1");
    if (cfg.policy.inflation == ScenarioPolicy::Inflation::constant &&
        !(cfg.policy.constant_value >= 0.0))
        throw ConfigError("scenario: constant inflation must be >= 0");
    if (cfg.horizon < 1) throw ConfigError("scenario: horizon must be >= 1");
    if (cfg.runs < 1) throw ConfigError("scenario: runs must be >= 1");
    if (!(cfg.zeta > 1.0)) throw ConfigError("scenario: bounds.zeta must be > 1");
    if (!(cfg.delta_prime_factor >= 0.0))
        throw ConfigError("scenario: bounds.delta_prime_factor must be >= 0");
}

/// Serializes a scenario; parse_scenario(write_scenario(cfg)) == cfg.
inline std::string write_scenario(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["name"] = cfg.name;
    j["arms"] = {{"means", cfg.means}, {"variance_proxies", cfg.variance_proxies}};
    switch (cfg.graph.kind) {
        case GraphSpec::Kind::complete: j["graph"] = {{"type", "complete"}}; break;
        case GraphSpec::Kind::cycle: j["graph"] = {{"type", "cycle"}}; break;
        case GraphSpec::Kind::edge_list:
            j["graph"] = {{"type", "edge_list"}, {"edges", cfg.graph.edges}};
            break;
    }
    if (cfg.graph.regular_degree) j["graph"]["regular_degree"] = *cfg.graph.regular_degree;
    j["sociability"] = cfg.sociability;
    switch (cfg.policy.inflation) {
        case ScenarioPolicy::Inflation::epsilon_pm:
            j["policy"] = {{"xi", cfg.policy.xi}, {"inflation", "epsilon_pm"}};
            break;
        case ScenarioPolicy::Inflation::log_log_time:
            j["policy"] = {{"xi", cfg.policy.xi}, {"inflation", "log_log_time"}};
            break;
        case ScenarioPolicy::Inflation::zero:
            j["policy"] = {{"xi", cfg.policy.xi}, {"inflation", "zero"}};
            break;
        case ScenarioPolicy::Inflation::constant:
            j["policy"] = {{"xi", cfg.policy.xi},
                           {"inflation", {{"constant", cfg.policy.constant_value}}}};
            break;
    }
    j["horizon"] = cfg.horizon;
    j["runs"] = cfg.runs;
    j["seed"] = cfg.seed;
    j["bounds"] = {{"zeta", cfg.zeta}, {"delta_prime_factor", cfg.delta_prime_factor}};
    return j.dump(2) + "\n";
}

/// Loads a scenario from a preset name or a JSON file path, validated.
inline ScenarioConfig load_scenario(const std::string& path_or_preset) {
    if (is_preset_name(path_or_preset)) {
        ScenarioConfig cfg = preset_scenario(path_or_preset);
        validate_scenario(cfg);
        return cfg;
    }
    std::ifstream in(path_or_preset);
    if (!in)
        throw ConfigError("scenario: '" + path_or_preset +
                          "' is neither a readable file nor a preset name");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ScenarioConfig cfg = parse_scenario(buffer.str(), path_or_preset);
    validate_scenario(cfg);
    return cfg;
}

/// --- Builders: scenario -> simulation inputs -------------------------------

inline BanditInstance make_instance(const ScenarioConfig& cfg) {
    return BanditInstance(cfg.means, cfg.variance_proxies);
}

inline ObservationNetwork make_network(const ScenarioConfig& cfg) {
    const int K = cfg.num_agents();
    switch (cfg.graph.kind) {
        case GraphSpec::Kind::complete:
            return ObservationNetwork::complete(K, cfg.sociability);
        case GraphSpec::Kind::cycle:
            return ObservationNetwork::cycle(K, cfg.sociability);
        case GraphSpec::Kind::edge_list: {
            std::vector<ObservationNetwork::Edge> edges;
            edges.reserve(cfg.graph.edges.size());
            for (const auto& e : cfg.graph.edges) edges.push_back({e[0] - 1, e[1] - 1});
            ObservationNetwork net(K, std::move(edges), cfg.sociability);
            if (cfg.graph.regular_degree && !net.is_regular(*cfg.graph.regular_degree))
                throw ConfigError("scenario: edge list is not " +
                                  std::to_string(*cfg.graph.regular_degree) + "-regular");
            return net;
        }
    }
    throw ConfigError("scenario: unreachable graph kind");
}

/// Per-agent policies.  epsilon_pm requires every agent to have a neighbor.
inline std::vector<PolicyConfig> make_policies(const ScenarioConfig& cfg,
                                               const ObservationNetwork& net) {
    std::vector<PolicyConfig> policies;
    policies.reserve(net.num_agents());
    for (int k = 0; k < net.num_agents(); ++k) {
        PolicyConfig p;
        p.xi = cfg.policy.xi;
        p.num_agents = net.num_agents();
        switch (cfg.policy.inflation) {
            case ScenarioPolicy::Inflation::epsilon_pm: {
                double eps;
                try {
                    eps = performance_measure(net, k);
                } catch (const std::domain_error& e) {
                    throw ConfigError(std::string("scenario: epsilon_pm inflation: ") + e.what());
                }
                p.inflation = InflationFunction::constant(eps);
                break;
            }
            case ScenarioPolicy::Inflation::constant:
                p.inflation = InflationFunction::constant(cfg.policy.constant_value);
                break;
            case ScenarioPolicy::Inflation::log_log_time:
                p.inflation = InflationFunction::log_log_time();
                break;
            case ScenarioPolicy::Inflation::zero:
                p.inflation = InflationFunction::zero();
                break;
        }
        p.validate();
        policies.push_back(p);
    }
    return policies;
}

}  // namespace mabnet
