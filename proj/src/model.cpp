#include "sdpkit/model.hpp"

#include <cmath>
#include <string>

namespace sdp {

namespace {

// Absolute slack when deciding whether a level sits on the grid. Levels in the
// bundled models are integers of magnitude O(10^2), far above this.
constexpr double kGridTolerance = 1e-9;

} // namespace

std::size_t StateHash::operator()(const State& s) const noexcept {
    const std::size_t h1 = std::hash<int>{}(s.stage);
    const std::size_t h2 = std::hash<double>{}(s.level);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

StateGrid::StateGrid(double step, double min_level, double max_level)
    : step_(step), min_level_(min_level), max_level_(max_level) {
    if (!(step > 0.0)) {
        throw ModelError("grid step must be positive, got " + std::to_string(step));
    }
    if (!(min_level < max_level)) {
        throw ModelError("grid needs min_level < max_level");
    }
    const double span = (max_level - min_level) / step;
    const double rounded = std::round(span);
    if (std::abs(span - rounded) > kGridTolerance) {
        throw ModelError("grid span must be an integer multiple of the step");
    }
    size_ = static_cast<std::size_t>(rounded) + 1;
}

double StateGrid::level_at(std::size_t index) const {
    if (index >= size_) {
        throw ModelError("grid index " + std::to_string(index) + " out of range");
    }
    return min_level_ + static_cast<double>(index) * step_;
}

std::optional<std::size_t> StateGrid::index_of(double level) const noexcept {
    const double offset = (level - min_level_) / step_;
    const double rounded = std::round(offset);
    if (std::abs(offset - rounded) > kGridTolerance) return std::nullopt;
    if (rounded < 0.0 || rounded >= static_cast<double>(size_)) return std::nullopt;
    return static_cast<std::size_t>(rounded);
}

std::vector<Action> feasible_actions(const ModelDefinition& m, const State& s) {
    std::vector<Action> actions = m.action_generator(s);
    if (actions.empty()) {
        throw InfeasibleStateError(s.stage, s.level);
    }
    for (std::size_t i = 1; i < actions.size(); ++i) {
        if (!(actions[i].magnitude > actions[i - 1].magnitude)) {
            throw ModelError("action generator must return strictly increasing magnitudes at "
                             "(stage=" + std::to_string(s.stage) +
                             ", level=" + std::to_string(s.level) + ")");
        }
    }
    return actions;
}

State apply_transition(const ModelDefinition& m, const State& s, const Action& a,
                       double outcome) {
    const State next = m.transition(s, a, outcome);
    if (next.stage != s.stage + 1) {
        throw ModelError("transition must advance the stage by exactly 1");
    }
    if (!m.grid.contains(next.level)) {
        throw OutOfGridError(s.stage, s.level, a.magnitude, outcome, next.level);
    }
    return next;
}

double evaluate_immediate(const ModelDefinition& m, const State& s, const Action& a,
                          double outcome) {
    return m.immediate_value(s, a, outcome);
}

void validate_model(const ModelDefinition& m) {
    if (m.horizon < 1) {
        throw ModelError("horizon must be at least 1");
    }
    if (!(m.discount >= 0.0 && m.discount <= 1.0)) {
        throw ModelError("discount must lie in [0, 1]");
    }
    if (static_cast<int>(m.stage_distributions.size()) != m.horizon) {
        throw ModelError("expected " + std::to_string(m.horizon) +
                         " stage distributions, got " +
                         std::to_string(m.stage_distributions.size()));
    }
    if (!m.action_generator || !m.transition || !m.random_outcome || !m.immediate_value) {
        throw ModelError("all four behavioral contracts must be set");
    }

    // Exhaustive closure sweep. Track the worst off-grid excursion so a
    // misconfigured grid is reported by its most extreme triple.
    double worst_excursion = 0.0;
    State worst_state{};
    Action worst_action{};
    double worst_outcome = 0.0;
    double worst_next = 0.0;

    for (int stage = 1; stage <= m.horizon; ++stage) {
        const TruncatedDistribution& dist = m.stage_distributions[stage - 1];
        for (std::size_t i = 0; i < m.grid.size(); ++i) {
            const State s{stage, m.grid.level_at(i)};
            const std::vector<Action> actions = feasible_actions(m, s);
            for (const Action& a : actions) {
                if (a.magnitude < 0.0) {
                    throw ModelError("action magnitudes must be nonnegative");
                }
                for (const auto& [outcome, mass] : dist.support()) {
                    const State next = m.transition(s, a, outcome);
                    if (next.stage != stage + 1) {
                        throw ModelError("transition must advance the stage by exactly 1");
                    }
                    if (!m.grid.contains(next.level)) {
                        const double excursion =
                            std::max(m.grid.min_level() - next.level,
                                     next.level - m.grid.max_level());
                        if (excursion > worst_excursion) {
                            worst_excursion = excursion;
                            worst_state = s;
                            worst_action = a;
                            worst_outcome = outcome;
                            worst_next = next.level;
                        }
                        continue;
                    }
                    const double recovered = m.random_outcome(s, a, next);
                    if (recovered != outcome) {
                        throw ModelError(
                            "random_outcome is not the inverse of transition at (stage=" +
                            std::to_string(stage) + ", level=" + std::to_string(s.level) +
                            ", action=" + std::to_string(a.magnitude) +
                            ", outcome=" + std::to_string(outcome) + ")");
                    }
                }
            }
        }
    }

    if (worst_excursion > 0.0) {
        throw OutOfGridError(worst_state.stage, worst_state.level, worst_action.magnitude,
                             worst_outcome, worst_next);
    }
}

} // namespace sdp
