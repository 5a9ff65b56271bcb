#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>

#include "sdpkit/model.hpp"
#include "sdpkit/sampling.hpp"

namespace sdp {

/// Stage-indexed map from state to optimal expected total value. States at
/// stage horizon+1 evaluate to exactly 0 (the boundary condition).
class ValueTable {
public:
    explicit ValueTable(int horizon) : horizon_(horizon) {}

    /// Value at s; exact 0 beyond the horizon, NotSolvedError when absent.
    double value_at(const State& s) const;
    bool contains(const State& s) const { return entries_.count(s) != 0; }
    void insert(const State& s, double value) { entries_.emplace(s, value); }

    int horizon() const noexcept { return horizon_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<State, double, StateOrder>& entries() const noexcept { return entries_; }

    friend bool operator==(const ValueTable&, const ValueTable&) = default;

private:
    int horizon_;
    std::map<State, double, StateOrder> entries_;
};

/// Stage-indexed map from state to an optimal action.
class PolicyTable {
public:
    /// Stored optimal action; NotSolvedError when the state was never solved.
    Action action_at(const State& s) const;
    bool contains(const State& s) const { return entries_.count(s) != 0; }
    void insert(const State& s, Action a) { entries_.emplace(s, a); }

    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<State, Action, StateOrder>& entries() const noexcept { return entries_; }

    friend bool operator==(const PolicyTable&, const PolicyTable&) = default;

private:
    std::map<State, Action, StateOrder> entries_;
};

struct SolveReport {
    double expected_total_value = 0.0;
    Action initial_action{};
    std::int64_t states_expanded = 0;
    std::chrono::duration<double> wall_time{};
};

/// Result of a solve. report_at() reads the tables at a query state, pairing
/// them with the solve-wide expansion count and wall time.
struct Solution {
    ValueTable values;
    PolicyTable policy;
    std::int64_t states_expanded = 0;
    std::chrono::duration<double> wall_time{};

    SolveReport report_at(const State& query) const;
};

/// Probability-weighted one-step lookahead:
///   sum_r mass(r) * [ immediate(s, a, r) + (s.stage < n ? discount * next_value(s') : 0) ]
/// over the stage-s support of m. Propagates OutOfGridError from transitions.
double stage_value(const ModelDefinition& m, const State& s, const Action& a,
                   const std::function<double(const State&)>& next_value);

/// Memoized top-down solve from the initial state, expanding only reachable
/// states and computing each state's value exactly once. Single-threaded by
/// contract; the memo cache is an in-memory hash map keyed by (stage, level).
/// capacity_hint pre-sizes the cache and may be left 0.
Solution forward_recursion(const ModelDefinition& m, const SamplingPlan& plan,
                           const State& initial, std::size_t capacity_hint = 0);

/// Stage-sweep solve over the full grid, from stage n down to 1. States within
/// one stage are independent and are evaluated concurrently when threads > 1;
/// results are identical for every thread count. threads = 0 uses the hardware
/// concurrency.
Solution backward_recursion(const ModelDefinition& m, const SamplingPlan& plan,
                            unsigned threads = 1);

/// Stored optimal action at s; NotSolvedError when absent.
Action optimal_action(const PolicyTable& pt, const State& s);

/// Post-hoc audit of a solved table pair: for every stored state the stored
/// action's stage value must be within tolerance of the optimum over all
/// feasible actions.
struct OptimalityAudit {
    bool optimal = true;
    double worst_gap = 0.0;
    State worst_state{};
};
OptimalityAudit certify_optimality(const ModelDefinition& m, const Solution& solution,
                                   double tolerance = 1e-9);

} // namespace sdp
