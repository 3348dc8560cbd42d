// Acceptance suite: runs every shipping criterion end to end and prints one
// PASS/FAIL line per criterion.  Exit status is the number of failures.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "mabnet/analysis.hpp"
#include "mabnet/experiment.hpp"
#include "mabnet/scenario.hpp"
#include "mabnet/simulator.hpp"
#include "support/single_agent_ucb.hpp"

using namespace mabnet;

namespace {

int failures = 0;
std::vector<std::string> details;

void report(int number, const std::string& title, bool ok) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", number, title.c_str());
    for (const auto& d : details) std::printf("        %s\n", d.c_str());
    details.clear();
    if (!ok) ++failures;
}

void detail(const std::string& line) { details.push_back(line); }

struct ScenarioRun {
    ScenarioConfig cfg;
    BanditInstance inst;
    ObservationNetwork net;
    std::vector<PolicyConfig> policies;
    MonteCarloSummary mc;
};

ScenarioRun run_preset(const std::string& name) {
    ScenarioConfig cfg = load_scenario(name);
    BanditInstance inst = make_instance(cfg);
    ObservationNetwork net = make_network(cfg);
    std::vector<PolicyConfig> policies = make_policies(cfg, net);
    MonteCarloSummary mc =
        run_monte_carlo(inst, net, policies, cfg.horizon, cfg.runs, cfg.seed);
    return {cfg, std::move(inst), std::move(net), std::move(policies), std::move(mc)};
}

double terminal(const ScenarioRun& s, int agent) {
    return s.mc.mean_regret_at(s.cfg.horizon, agent);
}
double terminal_se(const ScenarioRun& s, int agent) {
    return s.mc.stderr_at(s.cfg.horizon, agent);
}

/// a's terminal regret below b's by more than two combined standard errors.
bool separated_below(const ScenarioRun& s, int a, int b) {
    const double band = 2.0 * std::hypot(terminal_se(s, a), terminal_se(s, b));
    return terminal(s, a) < terminal(s, b) - band;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_performance_tables() {
    const std::vector<double> table_all = {0.542, 0.415, 0.825, 0.542, 0.374, 0.401};
    const std::vector<double> table_cyc = {0.624, 0.284, 0.783, 0.483, 0.418, 0.456};
    const std::vector<double> p = {0.50, 0.85, 0.05, 0.50, 1.00, 0.90};

    bool ok = true;
    auto all = ObservationNetwork::complete(6, p);
    for (int k = 0; k < 6; ++k) {
        const double eps = performance_measure(all, k);
        if (std::abs(eps - table_all[k]) > 5e-4) {
            ok = false;
            char buf[128];
            std::snprintf(buf, sizeof(buf), "all-to-all agent %d: computed %.6f vs table %.3f",
                          k + 1, eps, table_all[k]);
            detail(buf);
        }
    }
    auto cyc = ObservationNetwork::cycle(6, p);
    for (int k = 0; k < 6; ++k) {
        const double eps = performance_measure(cyc, k);
        if (std::abs(eps - table_cyc[k]) > 5e-4) {
            ok = false;
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "cyclic agent %d: computed %.6f vs table %.3f (off by %.2e)", k + 1,
                          eps, table_cyc[k], std::abs(eps - table_cyc[k]));
            detail(buf);
        }
    }
    report(1, "performance-measure tables match the published values within 5e-4", ok);
}

// --- criteria 2 and 8 (all-to-all), 3 (cyclic), 5 (both) -------------------

void criterion_alltoall_ordering(const ScenarioRun& a) {
    // predicted: 5 < 6 < 2 < {1,4} < 3 (1-based)
    auto groups = predicted_ranking(a.net);
    std::vector<double> means(6), ses(6);
    for (int k = 0; k < 6; ++k) {
        means[k] = terminal(a, k);
        ses[k] = terminal_se(a, k);
    }
    auto agreement = rank_agreement(groups, means, ses);

    const double tie_diff = std::abs(means[0] - means[3]);
    const double tie_band = 2.0 * std::hypot(ses[0], ses[3]);
    const bool tie_ok = tie_diff < tie_band;
    const bool ok = agreement.distinguishable_pairs == 14 && agreement.concordant_pairs == 14 &&
                    tie_ok;

    for (int k = 0; k < 6; ++k) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "agent %d: mean regret %.2f +- %.2f", k + 1, means[k],
                      ses[k]);
        detail(buf);
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "cross-group pairs separated %d/14 concordant %d; |R1-R4|=%.2f band %.2f",
                  agreement.distinguishable_pairs, agreement.concordant_pairs, tie_diff,
                  tie_band);
    detail(buf);
    report(2, "all-to-all regret ordering is 5 < 6 < 2 < {1,4} < 3 beyond 2 standard errors", ok);
}

void criterion_cyclic_ordering(const ScenarioRun& b) {
    bool ok = true;
    for (int k = 0; k < 6; ++k) {
        if (k != 1 && !separated_below(b, 1, k)) ok = false;  // agent 2 lowest
        if (k != 2 && !separated_below(b, k, 2)) ok = false;  // agent 3 highest
    }
    if (!separated_below(b, 3, 0)) ok = false;  // agent 4 outperforms agent 1
    for (int k = 0; k < 6; ++k) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "agent %d: mean regret %.2f +- %.2f", k + 1,
                      terminal(b, k), terminal_se(b, k));
        detail(buf);
    }
    report(3, "cyclic regret: agent 2 lowest, agent 3 highest, agent 4 below agent 1 (2 SE)",
           ok);
}

void criterion_case_contrast() {
    ScenarioRun c1 = run_preset("paper-case1");
    ScenarioRun c2 = run_preset("paper-case2");
    const double r1 = terminal(c1, 0), se1 = terminal_se(c1, 0);
    const double r2 = terminal(c2, 0), se2 = terminal_se(c2, 0);
    const bool ok = r1 < r2 - 2.0 * std::hypot(se1, se2);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "case 1 agent 1: %.2f +- %.2f, case 2 agent 1: %.2f +- %.2f",
                  r1, se1, r2, se2);
    detail(buf);
    report(4, "agent 1 regrets less with unsociable neighbors (case 1 below case 2 by 2 SE)", ok);
}

void criterion_sample_bound_domination(const ScenarioRun& a, const ScenarioRun& b) {
    bool ok = true;
    double worst = 0.0;
    for (const ScenarioRun* s : {&a, &b}) {
        const auto arm_gaps = gaps(s->inst);
        const BoundParams params{2.0, s->cfg.policy.xi, s->net.num_agents()};
        const double sigma = std::sqrt(6.0) * 5.0;
        for (int k = 0; k < s->net.num_agents(); ++k) {
            const double f_T =
                inflation_value(s->policies[k], static_cast<double>(s->cfg.horizon));
            for (int i = 0; i < s->inst.num_arms(); ++i) {
                if (arm_gaps[i] == 0.0) continue;
                const double bound =
                    expected_samples_bound(params, sigma, arm_gaps[i], f_T, s->cfg.horizon);
                const double empirical = s->mc.mean_pulls(k, i);
                worst = std::max(worst, empirical / bound);
                if (empirical > bound) {
                    ok = false;
                    char buf[128];
                    std::snprintf(buf, sizeof(buf),
                                  "%s agent %d arm %d: mean pulls %.2f exceeds bound %.2f",
                                  s->cfg.name.c_str(), k + 1, i + 1, empirical, bound);
                    detail(buf);
                }
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max empirical/bound ratio %.4f", worst);
    detail(buf);
    report(5, "sample-count bound dominates empirical suboptimal pulls on both presets", ok);
}

void criterion_concentration(const ScenarioRun& a) {
    const double delta = a.cfg.policy.xi + 1.0;  // 2.1
    const double delta_total = delta * (1.0 + a.cfg.delta_prime_factor);
    const BoundParams params{2.0, a.cfg.policy.xi, 6};
    const double bound = concentration_bound(params, 500.0, delta);
    const int best = optimal_arm(a.inst);

    bool ok = true;
    for (int k = 0; k < 6; ++k) {
        auto probe = empirical_tail_probability(a.inst, a.net, a.policies, best, k, 500,
                                                delta_total, 1000, a.cfg.seed);
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "agent %d: frequency %.4g (excluded %d) vs bound %.4g", k + 1,
                      probe.frequency, probe.excluded_runs, bound);
        detail(buf);
        if (probe.frequency > bound) ok = false;
    }
    report(6, "empirical tail frequency for the optimal arm stays below the closed-form bound",
           ok);
}

void criterion_oracle_equivalence() {
    BanditInstance inst({40.0, 60.0, 75.0, 90.0, 95.0}, std::vector<double>(5, 25.0));
    const int K = 3;
    auto net = ObservationNetwork::complete(K, std::vector<double>(K, 0.0));
    PolicyConfig pc;
    pc.xi = 1.1;
    pc.inflation = InflationFunction::zero();
    pc.num_agents = K;
    std::vector<PolicyConfig> policies(K, pc);

    bool ok = true;
    int mismatches = 0;
    for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
        std::vector<RoundOutcome> record;
        auto result = run_episode(inst, net, policies, 200, seed, &record);
        for (int k = 0; k < K; ++k) {
            oracle::SingleAgentUcb ref(1.1, 0.0, K, inst.means(), inst.reward_stddevs(), seed, k);
            for (std::int64_t t = 1; t <= 200; ++t) {
                const int arm = ref.play_round(t);
                if (arm != record[t - 1].choices[k] ||
                    ref.cumulative_regret != result.trace.at(t, k)) {
                    ok = false;
                    ++mismatches;
                    char buf[128];
                    std::snprintf(buf, sizeof(buf), "seed %llu agent %d round %lld diverged",
                                  static_cast<unsigned long long>(seed), k + 1,
                                  static_cast<long long>(t));
                    detail(buf);
                    break;
                }
            }
        }
    }
    if (ok) detail("100 seeds x 3 agents x 200 rounds: choices and regret bit-identical");
    report(7, "p = 0 simulation is bit-identical to an independent single-agent UCB", ok);
}

void criterion_log_growth(const ScenarioRun& a) {
    int best = 0;
    for (int k = 1; k < 6; ++k)
        if (terminal(a, k) < terminal(a, best)) best = k;
    const double r125 = a.mc.mean_regret_at(125, best);
    const double r250 = a.mc.mean_regret_at(250, best);
    const double r500 = a.mc.mean_regret_at(500, best);
    const bool ok = (r500 - r250) < (r250 - r125);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "agent %d: R(125)=%.2f R(250)=%.2f R(500)=%.2f", best + 1,
                  r125, r250, r500);
    detail(buf);
    report(8, "best agent's regret increments shrink on doubling horizons (log-like growth)", ok);
}

// --- criterion 9: property sweep -------------------------------------------

void criterion_properties() {
    bool ok = true;
    Rng gen(90210);

    // conservation and domination on random small scenarios
    for (int trial = 0; trial < 20; ++trial) {
        const int K = 2 + static_cast<int>(gen.next_below(4));
        const int N = 2 + static_cast<int>(gen.next_below(5));
        std::vector<double> means(N), vars(N, 4.0), p(K);
        for (auto& m : means) m = gen.next_gaussian(50.0, 20.0);
        for (auto& v : p) v = gen.next_unit();
        BanditInstance inst(means, vars);
        auto net = ObservationNetwork::complete(K, p);
        PolicyConfig pc;
        pc.xi = 1.1;
        pc.inflation = InflationFunction::constant(0.3);
        pc.num_agents = K;
        SimulationRun run(inst, net, std::vector<PolicyConfig>(K, pc), gen.next_u64());
        for (int t = 1; t <= 40; ++t) {
            run.step();
            for (int k = 0; k < K; ++k) {
                if (run.beliefs()[k].total_pulls() != t) ok = false;
                for (int i = 0; i < N; ++i)
                    if (run.beliefs()[k].obs_count(i) < run.beliefs()[k].pull_count(i)) ok = false;
            }
        }
    }
    if (!ok) detail("conservation / domination failed");

    // epsilon monotonicities
    bool mono = true;
    for (int trial = 0; trial < 300; ++trial) {
        const int K = 4 + static_cast<int>(gen.next_below(4));
        std::vector<double> p(K);
        for (auto& v : p) v = 0.01 + 0.9 * gen.next_unit();
        auto net = ObservationNetwork::complete(K, p);
        const int k = static_cast<int>(gen.next_below(K));
        auto bump_own = p;
        bump_own[k] += 0.05;
        auto bump_nbr = p;
        const int j = (k + 1) % K;
        bump_nbr[j] += 0.05;
        if (!(performance_measure(ObservationNetwork::complete(K, bump_own), k) <
              performance_measure(net, k)))
            mono = false;
        if (!(performance_measure(ObservationNetwork::complete(K, bump_nbr), k) >
              performance_measure(net, k)))
            mono = false;
    }
    if (!mono) detail("epsilon monotonicity failed");
    ok = ok && mono;

    // all-to-all ordering over 1000 random sociability vectors
    bool lemma = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const int K = 3 + static_cast<int>(gen.next_below(6));
        std::vector<double> p(K);
        for (auto& v : p) v = gen.next_unit();
        auto eps = performance_measures(ObservationNetwork::complete(K, p));
        for (int x = 0; x < K; ++x)
            for (int y = 0; y < K; ++y)
                if (p[x] > p[y] && !(eps[x] < eps[y])) lemma = false;
    }
    if (!lemma) detail("all-to-all sociability ordering failed");
    ok = ok && lemma;

    // translation invariance of selection
    bool trans = true;
    PolicyConfig pc;
    pc.xi = 1.2;
    pc.inflation = InflationFunction::constant(0.4);
    pc.num_agents = 4;
    const std::vector<double> sigma_primes = {1.0, 2.0, 0.5, 1.5};
    for (int trial = 0; trial < 300; ++trial) {
        AgentBeliefs base(4), shifted(4);
        const double shift = gen.next_gaussian(0.0, 50.0);
        for (int i = 0; i < 4; ++i) {
            const int n = 1 + static_cast<int>(gen.next_below(25));
            const double mean = gen.next_gaussian(0.0, 10.0);
            for (int rep = 0; rep < n; ++rep) {
                base.observe(i, mean);
                shifted.observe(i, mean + shift);
            }
        }
        Rng tie_a(trial), tie_b(trial);
        const std::int64_t t = 2 + static_cast<std::int64_t>(gen.next_below(300));
        if (select_arm(base, pc, sigma_primes, t, tie_a) !=
            select_arm(shifted, pc, sigma_primes, t, tie_b))
            trans = false;
    }
    if (!trans) detail("translation invariance failed");
    ok = ok && trans;

    // determinism: fixed seed, serial vs parallel
    auto cfg = load_scenario("paper-all-to-all");
    cfg.runs = 6;
    cfg.horizon = 60;
    auto inst = make_instance(cfg);
    auto net = make_network(cfg);
    auto policies = make_policies(cfg, net);
    auto serial = run_monte_carlo(inst, net, policies, cfg.horizon, cfg.runs, cfg.seed, 1);
    auto parallel = run_monte_carlo(inst, net, policies, cfg.horizon, cfg.runs, cfg.seed, 3);
    auto again = run_monte_carlo(inst, net, policies, cfg.horizon, cfg.runs, cfg.seed, 1);
    const bool deterministic = serial.mean_cum_regret == parallel.mean_cum_regret &&
                               serial.stderr_cum_regret == parallel.stderr_cum_regret &&
                               serial.mean_cum_regret == again.mean_cum_regret;
    if (!deterministic) detail("fixed-seed determinism failed");
    ok = ok && deterministic;

    report(9, "module property suites (conservation, monotonicity, ordering, determinism)", ok);
}

}  // namespace

int main() {
    std::printf("running acceptance suite (presets at full scale; about half a minute)\n");

    criterion_performance_tables();

    ScenarioRun a = run_preset("paper-all-to-all");
    ScenarioRun b = run_preset("paper-cyclic");

    criterion_alltoall_ordering(a);
    criterion_cyclic_ordering(b);
    criterion_case_contrast();
    criterion_sample_bound_domination(a, b);
    criterion_concentration(a);
    criterion_oracle_equivalence();
    criterion_log_growth(a);
    criterion_properties();

    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criterion(s) failed\n", failures);
    return failures;
}
