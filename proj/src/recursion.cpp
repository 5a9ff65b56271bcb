#include "sdpkit/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <vector>

namespace sdp {

namespace {

bool improves(Direction direction, double candidate, double incumbent) {
    return direction == Direction::minimize ? candidate < incumbent : candidate > incumbent;
}

/// Best (value, action) over the feasible actions of s. Ties keep the
/// smallest magnitude: actions arrive in increasing order and only strict
/// improvement replaces the incumbent.
std::pair<double, Action> optimize_state(const ModelDefinition& m, const State& s,
                                         const std::function<double(const State&)>& next_value) {
    const std::vector<Action> actions = feasible_actions(m, s);
    double best_value = 0.0;
    Action best_action{};
    bool first = true;
    for (const Action& a : actions) {
        const double value = stage_value(m, s, a, next_value);
        if (first || improves(m.direction, value, best_value)) {
            best_value = value;
            best_action = a;
            first = false;
        }
    }
    return {best_value, best_action};
}

} // namespace

double ValueTable::value_at(const State& s) const {
    if (s.stage == horizon_ + 1) return 0.0;
    const auto it = entries_.find(s);
    if (it == entries_.end()) {
        throw NotSolvedError(s.stage, s.level);
    }
    return it->second;
}

Action PolicyTable::action_at(const State& s) const {
    const auto it = entries_.find(s);
    if (it == entries_.end()) {
        throw NotSolvedError(s.stage, s.level);
    }
    return it->second;
}

SolveReport Solution::report_at(const State& query) const {
    SolveReport report;
    report.expected_total_value = values.value_at(query);
    report.initial_action = policy.action_at(query);
    report.states_expanded = states_expanded;
    report.wall_time = wall_time;
    return report;
}

double stage_value(const ModelDefinition& m, const State& s, const Action& a,
                   const std::function<double(const State&)>& next_value) {
    const TruncatedDistribution& dist =
        m.stage_distributions[static_cast<std::size_t>(s.stage - 1)];
    const bool has_future = s.stage < m.horizon;
    double total = 0.0;
    for (const auto& [outcome, mass] : dist.support()) {
        double term = evaluate_immediate(m, s, a, outcome);
        if (has_future) {
            const State next = apply_transition(m, s, a, outcome);
            term += m.discount * next_value(next);
        }
        total += mass * term;
    }
    return total;
}

Solution forward_recursion(const ModelDefinition& m, const SamplingPlan& plan,
                           const State& initial, std::size_t capacity_hint) {
    if (initial.stage != 1) {
        throw ModelError("forward recursion starts at stage 1");
    }
    if (!m.grid.contains(initial.level)) {
        throw OutOfGridError(initial.stage, initial.level, 0.0, 0.0, initial.level);
    }

    const auto start = std::chrono::steady_clock::now();
    const ModelDefinition effective = with_sampled_distributions(m, plan);

    std::unordered_map<State, std::pair<double, Action>, StateHash> cache;
    if (capacity_hint > 0) cache.reserve(capacity_hint);

    // computeIfAbsent-style memoized descent; stage strictly increases, so the
    // recursion depth is bounded by the horizon.
    std::function<double(const State&)> solve = [&](const State& s) -> double {
        const auto it = cache.find(s);
        if (it != cache.end()) return it->second.first;
        const auto best = optimize_state(effective, s, solve);
        cache.emplace(s, best);
        return best.first;
    };
    solve(initial);

    Solution solution{ValueTable(m.horizon), PolicyTable{}};
    for (const auto& [state, entry] : cache) {
        solution.values.insert(state, entry.first);
        solution.policy.insert(state, entry.second);
    }
    solution.states_expanded = static_cast<std::int64_t>(cache.size());
    solution.wall_time = std::chrono::steady_clock::now() - start;
    return solution;
}

Solution backward_recursion(const ModelDefinition& m, const SamplingPlan& plan,
                            unsigned threads) {
    const auto start = std::chrono::steady_clock::now();
    const ModelDefinition effective = with_sampled_distributions(m, plan);
    const std::size_t grid_size = m.grid.size();

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid_size));

    // One value/action slot per grid index; the previous stage's slots are
    // read-only during a sweep, so states can be processed concurrently.
    std::vector<double> next_values(grid_size, 0.0);
    std::vector<double> current_values(grid_size, 0.0);
    std::vector<Action> current_actions(grid_size);

    Solution solution{ValueTable(m.horizon), PolicyTable{}};

    for (int stage = m.horizon; stage >= 1; --stage) {
        const std::function<double(const State&)> next_value = [&](const State& s) {
            return next_values[*effective.grid.index_of(s.level)];
        };

        auto sweep = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const State s{stage, effective.grid.level_at(i)};
                const auto best = optimize_state(effective, s, next_value);
                current_values[i] = best.first;
                current_actions[i] = best.second;
            }
        };

        if (threads <= 1) {
            sweep(0, grid_size);
        } else {
            std::vector<std::thread> workers;
            workers.reserve(threads);
            const std::size_t chunk = (grid_size + threads - 1) / threads;
            std::exception_ptr failure;
            std::mutex failure_mutex;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t begin = t * chunk;
                const std::size_t end = std::min(grid_size, begin + chunk);
                if (begin >= end) break;
                workers.emplace_back([&, begin, end] {
                    try {
                        sweep(begin, end);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) w.join();
            if (failure) std::rethrow_exception(failure);
        }

        for (std::size_t i = 0; i < grid_size; ++i) {
            const State s{stage, effective.grid.level_at(i)};
            solution.values.insert(s, current_values[i]);
            solution.policy.insert(s, current_actions[i]);
        }
        next_values.swap(current_values);
    }

    solution.states_expanded = static_cast<std::int64_t>(m.horizon) *
                               static_cast<std::int64_t>(grid_size);
    solution.wall_time = std::chrono::steady_clock::now() - start;
    return solution;
}

Action optimal_action(const PolicyTable& pt, const State& s) {
    return pt.action_at(s);
}

OptimalityAudit certify_optimality(const ModelDefinition& m, const Solution& solution,
                                   double tolerance) {
    OptimalityAudit audit;
    const std::function<double(const State&)> next_value = [&](const State& s) {
        return solution.values.value_at(s);
    };
    for (const auto& [state, stored_action] : solution.policy.entries()) {
        const double stored_value = stage_value(m, state, stored_action, next_value);
        double best = stored_value;
        for (const Action& a : feasible_actions(m, state)) {
            const double value = stage_value(m, state, a, next_value);
            if (improves(m.direction, value, best)) best = value;
        }
        const double gap = std::abs(stored_value - best);
        if (gap > audit.worst_gap) {
            audit.worst_gap = gap;
            audit.worst_state = state;
        }
        if (gap > tolerance) audit.optimal = false;
    }
    return audit;
}

} // namespace sdp
