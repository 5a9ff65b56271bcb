#include "sdpkit/policy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sdp {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw_truncated(const TruncatedDistribution& dist, std::mt19937_64& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (const auto& [outcome, mass] : dist.support()) {
        acc += mass;
        if (u < acc) return outcome;
    }
    return dist.support().back().outcome;
}

double draw_parent(const DiscreteDistribution& dist, std::mt19937_64& rng) {
    const double u = std::max(uniform01(rng), std::numeric_limits<double>::min());
    return dist.quantile(u);
}

Action policy_action(const PolicyTable& pt, const State& s) {
    if (!pt.contains(s)) {
        throw PolicyGapError(s.stage, s.level);
    }
    return pt.action_at(s);
}

double path_count(const ModelDefinition& m, int from_stage) {
    double total = 1.0;
    for (int t = from_stage; t <= m.horizon; ++t) {
        total *= static_cast<double>(
            m.stage_distributions[static_cast<std::size_t>(t - 1)].size());
    }
    return total;
}

// Expected cost over every outcome path, exactly.
void enumerate_paths(const ModelDefinition& m, const PolicyTable& pt, const State& s,
                     double prob, double cost, double discount_pow, std::int64_t& paths,
                     double& expected) {
    const Action a = policy_action(pt, s);
    const TruncatedDistribution& dist =
        m.stage_distributions[static_cast<std::size_t>(s.stage - 1)];
    for (const auto& [outcome, mass] : dist.support()) {
        const double path_cost =
            cost + discount_pow * evaluate_immediate(m, s, a, outcome);
        if (s.stage == m.horizon) {
            expected += prob * mass * path_cost;
            ++paths;
        } else {
            const State next = apply_transition(m, s, a, outcome);
            enumerate_paths(m, pt, next, prob * mass, path_cost,
                            discount_pow * m.discount, paths, expected);
        }
    }
}

} // namespace

SimulationResult simulate_policy(const ModelDefinition& m, const PolicyTable& pt,
                                 const State& s0, std::int64_t replications,
                                 std::uint64_t seed, const SimulationOptions& options) {
    if (replications < 1) {
        throw DomainError("replications must be at least 1");
    }
    if (options.untruncated_demand &&
        options.parents.size() != static_cast<std::size_t>(m.horizon)) {
        throw DomainError("untruncated demand needs one parent distribution per stage");
    }

    bool exhaustive = options.mode == SimulationMode::exhaustive;
    if (options.mode == SimulationMode::automatic && !options.untruncated_demand) {
        exhaustive = path_count(m, s0.stage) <= 1e6;
    }
    if (exhaustive && options.untruncated_demand) {
        throw DomainError("exhaustive path enumeration requires the truncated demand process");
    }

    SimulationResult result;
    if (exhaustive) {
        std::int64_t paths = 0;
        double expected = 0.0;
        enumerate_paths(m, pt, s0, 1.0, 0.0, 1.0, paths, expected);
        result.replications = paths;
        result.mean_cost = expected;
        result.standard_error = 0.0;
        result.confidence_interval_95 = {expected, expected};
        result.exhaustive = true;
        return result;
    }

    std::vector<double> costs;
    costs.reserve(static_cast<std::size_t>(replications));
    for (std::int64_t rep = 1; rep <= replications; ++rep) {
        std::mt19937_64 rng(stage_seed(seed, static_cast<int>(rep)));
        State state = s0;
        double cost = 0.0;
        double discount_pow = 1.0;
        for (int t = s0.stage; t <= m.horizon; ++t) {
            const Action a = policy_action(pt, state);
            double outcome;
            if (options.untruncated_demand) {
                outcome = draw_parent(*options.parents[static_cast<std::size_t>(t - 1)], rng);
            } else {
                outcome = draw_truncated(
                    m.stage_distributions[static_cast<std::size_t>(t - 1)], rng);
            }
            cost += discount_pow * evaluate_immediate(m, state, a, outcome);
            if (t < m.horizon) {
                state = apply_transition(m, state, a, outcome);
                discount_pow *= m.discount;
            }
        }
        costs.push_back(cost);
    }

    double mean = 0.0;
    for (double c : costs) mean += c;
    mean /= static_cast<double>(costs.size());

    double sq = 0.0;
    for (double c : costs) sq += (c - mean) * (c - mean);
    const double stderr_mean =
        costs.size() > 1
            ? std::sqrt(sq / (static_cast<double>(costs.size() - 1) *
                              static_cast<double>(costs.size())))
            : 0.0;

    result.replications = replications;
    result.mean_cost = mean;
    result.standard_error = stderr_mean;
    result.confidence_interval_95 = {mean - 1.96 * stderr_mean, mean + 1.96 * stderr_mean};
    result.exhaustive = false;
    if (options.replication_costs) *options.replication_costs = std::move(costs);
    return result;
}

SsExtraction extract_sS(const PolicyTable& pt, int stage, const StateGrid& grid,
                        double min_level, double max_level) {
    std::vector<std::pair<double, double>> levels; // (level, action magnitude)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double level = grid.level_at(i);
        if (level < min_level || level > max_level) continue;
        levels.emplace_back(level, pt.action_at(State{stage, level}).magnitude);
    }
    if (levels.empty()) {
        throw DomainError("empty level window for (s,S) extraction");
    }

    SsExtraction out;
    const auto first_zero = std::find_if(levels.begin(), levels.end(),
                                         [](const auto& p) { return p.second == 0.0; });
    if (first_zero == levels.end()) {
        // Ordering everywhere in the window: the no-order region starts above it.
        double order_up_to = levels.front().first + levels.front().second;
        for (const auto& [level, action] : levels) {
            if (level + action != order_up_to) {
                out.kind = SsExtraction::Kind::not_ss;
                return out;
            }
        }
        out.kind = SsExtraction::Kind::ss_policy;
        out.reorder_threshold = levels.back().first + grid.step();
        out.order_up_to = order_up_to;
        return out;
    }

    const double threshold = first_zero->first;
    if (first_zero == levels.begin()) {
        const bool all_zero = std::all_of(levels.begin(), levels.end(),
                                          [](const auto& p) { return p.second == 0.0; });
        if (all_zero) {
            out.kind = SsExtraction::Kind::never_order;
            out.reorder_threshold = -std::numeric_limits<double>::infinity();
            return out;
        }
        out.kind = SsExtraction::Kind::not_ss;
        return out;
    }

    double order_up_to = levels.front().first + levels.front().second;
    for (const auto& [level, action] : levels) {
        if (level < threshold) {
            if (action == 0.0 || level + action != order_up_to) {
                out.kind = SsExtraction::Kind::not_ss;
                return out;
            }
        } else if (action != 0.0) {
            out.kind = SsExtraction::Kind::not_ss;
            return out;
        }
    }
    out.kind = SsExtraction::Kind::ss_policy;
    out.reorder_threshold = threshold;
    out.order_up_to = order_up_to;
    return out;
}

SsExtraction extract_sS(const PolicyTable& pt, int stage, const StateGrid& grid) {
    return extract_sS(pt, stage, grid, grid.min_level(), grid.max_level());
}

} // namespace sdp
