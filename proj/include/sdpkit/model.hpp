#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sdpkit/distributions.hpp"
#include "sdpkit/errors.hpp"

namespace sdp {

enum class Direction { minimize, maximize };

/// A decision epoch and a scalar state coordinate (inventory level in the
/// bundled models). Stages run 1..n for decisions; n+1 is the boundary.
struct State {
    int stage = 1;
    double level = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

/// Orders states by (stage, level); used for deterministic table iteration.
struct StateOrder {
    bool operator()(const State& a, const State& b) const noexcept {
        if (a.stage != b.stage) return a.stage < b.stage;
        return a.level < b.level;
    }
};

struct StateHash {
    std::size_t operator()(const State& s) const noexcept;
};

/// A nonnegative decision magnitude (order quantity in the bundled models).
struct Action {
    double magnitude = 0.0;

    friend auto operator<=>(const Action&, const Action&) = default;
};

/// Uniform discretization of the state coordinate: levels
/// min_level, min_level + step, ..., max_level.
class StateGrid {
public:
    StateGrid(double step, double min_level, double max_level);

    double step() const noexcept { return step_; }
    double min_level() const noexcept { return min_level_; }
    double max_level() const noexcept { return max_level_; }
    std::size_t size() const noexcept { return size_; }

    double level_at(std::size_t index) const;
    /// Grid index of an on-grid level, or nullopt when off-grid/out of bounds.
    std::optional<std::size_t> index_of(double level) const noexcept;
    bool contains(double level) const noexcept { return index_of(level).has_value(); }

private:
    double step_;
    double min_level_;
    double max_level_;
    std::size_t size_;
};

using ActionGenerator = std::function<std::vector<Action>(const State&)>;
using TransitionFn = std::function<State(const State&, const Action&, double)>;
using RandomOutcomeFn = std::function<double(const State&, const Action&, const State&)>;
using ImmediateValueFn = std::function<double(const State&, const Action&, double)>;

/// The declarative model bundle: horizon, optimization direction, discount,
/// state grid, one truncated outcome distribution per stage, and the four
/// behavioral contracts. All contracts must be pure and reentrant.
struct ModelDefinition {
    int horizon = 1;
    Direction direction = Direction::minimize;
    double discount = 1.0;
    StateGrid grid{1.0, 0.0, 1.0};
    std::vector<TruncatedDistribution> stage_distributions;
    ActionGenerator action_generator;
    TransitionFn transition;
    RandomOutcomeFn random_outcome;
    ImmediateValueFn immediate_value;
};

/// Feasible actions for s in strictly increasing magnitude.
/// Throws InfeasibleStateError when the generator returns an empty list.
std::vector<Action> feasible_actions(const ModelDefinition& m, const State& s);

/// Next state under (s, a, outcome). Throws OutOfGridError when the resulting
/// level is off-grid or outside the grid bounds.
State apply_transition(const ModelDefinition& m, const State& s, const Action& a, double outcome);

/// One-period cost/reward of (s, a) under the realized outcome.
double evaluate_immediate(const ModelDefinition& m, const State& s, const Action& a,
                          double outcome);

/// Structural validation: horizon/discount/distribution-count checks, then an
/// exhaustive sweep over every stage, grid state, feasible action and support
/// outcome verifying action ordering, grid closure of transitions and the
/// random_outcome/transition round trip. On a closure failure the error
/// message carries the worst offending (state, action, outcome) triple.
void validate_model(const ModelDefinition& m);

} // namespace sdp
