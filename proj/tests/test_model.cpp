#include <doctest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "sdpkit/apps.hpp"
#include "sdpkit/model.hpp"

using namespace sdp;

namespace {

std::vector<double> magnitudes(const std::vector<Action>& actions) {
    std::vector<double> out;
    for (const Action& a : actions) out.push_back(a.magnitude);
    return out;
}

} // namespace

TEST_CASE("state grid indexing") {
    const StateGrid grid(1.0, -50.0, 150.0);
    CHECK(grid.size() == 201);
    CHECK(grid.level_at(0) == -50.0);
    CHECK(grid.level_at(200) == 150.0);
    CHECK(grid.index_of(0.0) == 50);
    CHECK(!grid.index_of(0.5).has_value());
    CHECK(!grid.index_of(151.0).has_value());
    CHECK(grid.contains(-50.0));
    CHECK(!grid.contains(-50.5));

    CHECK_THROWS_AS(StateGrid(0.0, 0.0, 1.0), ModelError);
    CHECK_THROWS_AS(StateGrid(1.0, 2.0, 1.0), ModelError);
    CHECK_THROWS_AS(StateGrid(1.0, 0.0, 2.5), ModelError);
}

TEST_CASE("state equality and hashing") {
    const State a{1, 2.0}, b{1, 2.0}, c{2, 2.0}, d{1, 3.0};
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != d);
    const StateHash hash;
    CHECK(hash(a) == hash(b));
}

TEST_CASE("toy feasible actions follow the constraint set") {
    const auto instance = build_toy_inventory();
    const ModelDefinition& m = instance.model;

    CHECK(magnitudes(feasible_actions(m, State{1, 1.0})) == std::vector<double>{1.0, 2.0, 3.0});

    // Against independent feasibility enumeration at every grid level.
    const oracle::ToyProblem reference;
    for (int level = 0; level <= 3; ++level) {
        const auto expected = oracle::toy_feasible(reference, level);
        const auto actual = magnitudes(feasible_actions(m, State{1, static_cast<double>(level)}));
        REQUIRE(actual.size() == expected.size());
        for (std::size_t i = 0; i < actual.size(); ++i) {
            CHECK(actual[i] == static_cast<double>(expected[i]));
        }
    }
}

TEST_CASE("scarf feasible actions are order-up-to levels") {
    const auto instance = build_scarf();
    const ModelDefinition& m = instance.model;

    const auto at_top = feasible_actions(m, State{1, 150.0});
    REQUIRE(at_top.size() == 1);
    CHECK(at_top[0].magnitude == 0.0);

    const auto at_zero = feasible_actions(m, State{1, 0.0});
    REQUIRE(at_zero.size() == 151);
    CHECK(at_zero.front().magnitude == 0.0);
    CHECK(at_zero.back().magnitude == 150.0);
}

TEST_CASE("feasible actions are strictly increasing everywhere") {
    for (const auto& instance : {build_toy_inventory(), build_scarf()}) {
        const ModelDefinition& m = instance.model;
        for (int stage = 1; stage <= m.horizon; ++stage) {
            for (std::size_t i = 0; i < m.grid.size(); ++i) {
                const auto actions = feasible_actions(m, State{stage, m.grid.level_at(i)});
                for (std::size_t j = 1; j < actions.size(); ++j) {
                    CHECK(actions[j].magnitude > actions[j - 1].magnitude);
                }
            }
        }
    }
}

TEST_CASE("transition examples") {
    const auto toy = build_toy_inventory();
    CHECK(apply_transition(toy.model, State{1, 1.0}, Action{3.0}, 2.0) == State{2, 2.0});
    CHECK(apply_transition(toy.model, State{1, 1.0}, Action{1.0}, 2.0) == State{2, 0.0});

    const auto scarf = build_scarf();
    CHECK(apply_transition(scarf.model, State{1, 0.0}, Action{91.0}, 10.0) == State{2, 81.0});
}

TEST_CASE("off-grid transitions raise OutOfGridError with context") {
    const auto toy = build_toy_inventory();
    try {
        apply_transition(toy.model, State{1, 0.0}, Action{2.0}, 5.0);
        FAIL("expected OutOfGridError");
    } catch (const OutOfGridError& e) {
        CHECK(e.stage() == 1);
        CHECK(e.level() == 0.0);
        CHECK(e.action() == 2.0);
        CHECK(e.outcome() == 5.0);
        CHECK(e.next_level() == -3.0);
    }
}

TEST_CASE("immediate value examples") {
    const auto toy = build_toy_inventory();
    CHECK(evaluate_immediate(toy.model, State{1, 1.0}, Action{3.0}, 2.0) == 11.0);
    CHECK(evaluate_immediate(toy.model, State{2, 1.0}, Action{3.0}, 2.0) == 11.0);
    CHECK(evaluate_immediate(toy.model, State{3, 1.0}, Action{1.0}, 1.0) == 4.0);

    const auto scarf = build_scarf();
    CHECK(evaluate_immediate(scarf.model, State{1, 0.0}, Action{0.0}, 10.0) == 100.0);
}

TEST_CASE("random outcome inverts the transition on both models") {
    for (const auto& instance : {build_toy_inventory(), build_scarf()}) {
        const ModelDefinition& m = instance.model;
        // validate_model sweeps everything; spot-check the identity directly too.
        for (int stage = 1; stage <= m.horizon; ++stage) {
            const auto& dist = m.stage_distributions[static_cast<std::size_t>(stage - 1)];
            for (std::size_t i = 0; i < m.grid.size(); i += 7) {
                const State s{stage, m.grid.level_at(i)};
                const auto actions = feasible_actions(m, s);
                const Action a = actions[actions.size() / 2];
                for (const auto& [outcome, mass] : dist.support()) {
                    const State next = apply_transition(m, s, a, outcome);
                    CHECK(m.random_outcome(s, a, next) == outcome);
                }
            }
        }
    }
}

TEST_CASE("toy model never backorders and respects capacity") {
    const auto instance = build_toy_inventory();
    const ModelDefinition& m = instance.model;

    // Reachable states from (1, 1) under every feasible action.
    std::set<State, StateOrder> frontier{instance.initial_state};
    for (int stage = 1; stage <= m.horizon; ++stage) {
        std::set<State, StateOrder> next_frontier;
        for (const State& s : frontier) {
            if (s.stage != stage) continue;
            const auto& dist = m.stage_distributions[static_cast<std::size_t>(stage - 1)];
            for (const Action& a : feasible_actions(m, s)) {
                double min_outcome = dist.support().front().outcome;
                for (const auto& [outcome, mass] : dist.support()) {
                    CHECK(s.level + a.magnitude - outcome >= 0.0);
                    if (stage < m.horizon) {
                        const State next = apply_transition(m, s, a, outcome);
                        next_frontier.insert(next);
                    }
                }
                if (stage <= m.horizon - 1) {
                    CHECK(s.level + a.magnitude - min_outcome <= 3.0);
                }
            }
        }
        frontier = std::move(next_frontier);
    }
}

TEST_CASE("grid closure holds exhaustively for the bundled models") {
    CHECK_NOTHROW(validate_model(build_toy_inventory().model));
    CHECK_NOTHROW(validate_model(build_scarf().model));
}

TEST_CASE("validation reports models that leave the grid") {
    auto instance = build_scarf();
    ModelDefinition broken = instance.model;
    broken.action_generator = [](const State& s) {
        return std::vector<Action>{Action{0.0}}; // never order: low levels drift off-grid
    };
    CHECK_THROWS_AS(validate_model(broken), OutOfGridError);
}

TEST_CASE("empty action lists raise InfeasibleStateError") {
    auto instance = build_toy_inventory();
    ModelDefinition broken = instance.model;
    broken.action_generator = [](const State&) { return std::vector<Action>{}; };
    try {
        feasible_actions(broken, State{2, 1.0});
        FAIL("expected InfeasibleStateError");
    } catch (const InfeasibleStateError& e) {
        CHECK(e.stage() == 2);
        CHECK(e.level() == 1.0);
    }
}

TEST_CASE("model validation rejects structural mistakes") {
    auto instance = build_toy_inventory();
    ModelDefinition m = instance.model;

    m.horizon = 0;
    CHECK_THROWS_AS(validate_model(m), ModelError);

    m = instance.model;
    m.discount = 1.5;
    CHECK_THROWS_AS(validate_model(m), ModelError);

    m = instance.model;
    m.stage_distributions.pop_back();
    CHECK_THROWS_AS(validate_model(m), ModelError);

    m = instance.model;
    m.transition = nullptr;
    CHECK_THROWS_AS(validate_model(m), ModelError);
}
