#pragma once

#include <stdexcept>
#include <string>

namespace sdp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument to a probability or numeric routine (e.g. quantile level
/// outside (0,1)).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A model definition violates one of its structural invariants.
class ModelError : public Error {
public:
    using Error::Error;
};

/// The action generator returned no feasible action for an in-grid state.
class InfeasibleStateError : public ModelError {
public:
    InfeasibleStateError(int stage, double level)
        : ModelError("no feasible action for state (stage=" + std::to_string(stage) +
                     ", level=" + std::to_string(level) + ")"),
          stage_(stage), level_(level) {}

    int stage() const noexcept { return stage_; }
    double level() const noexcept { return level_; }

private:
    int stage_;
    double level_;
};

/// A transition produced a state that is off the grid or outside its bounds.
class OutOfGridError : public ModelError {
public:
    OutOfGridError(int stage, double level, double action, double outcome, double next_level)
        : ModelError("transition leaves the grid: state (stage=" + std::to_string(stage) +
                     ", level=" + std::to_string(level) + "), action " + std::to_string(action) +
                     ", outcome " + std::to_string(outcome) + " -> level " +
                     std::to_string(next_level)),
          stage_(stage), level_(level), action_(action), outcome_(outcome),
          next_level_(next_level) {}

    int stage() const noexcept { return stage_; }
    double level() const noexcept { return level_; }
    double action() const noexcept { return action_; }
    double outcome() const noexcept { return outcome_; }
    double next_level() const noexcept { return next_level_; }

private:
    int stage_;
    double level_;
    double action_;
    double outcome_;
    double next_level_;
};

/// A value or policy table was queried at a state it does not cover.
class NotSolvedError : public Error {
public:
    NotSolvedError(int stage, double level)
        : Error("state (stage=" + std::to_string(stage) + ", level=" + std::to_string(level) +
                ") is not in the solved table"),
          stage_(stage), level_(level) {}

    int stage() const noexcept { return stage_; }
    double level() const noexcept { return level_; }

private:
    int stage_;
    double level_;
};

/// A simulated path reached a state the policy table does not cover.
class PolicyGapError : public Error {
public:
    PolicyGapError(int stage, double level)
        : Error("policy has no action for state (stage=" + std::to_string(stage) +
                ", level=" + std::to_string(level) + ") reached during simulation"),
          stage_(stage), level_(level) {}

    int stage() const noexcept { return stage_; }
    double level() const noexcept { return level_; }

private:
    int stage_;
    double level_;
};

} // namespace sdp
