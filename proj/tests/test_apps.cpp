#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sdpkit/apps.hpp"
#include "sdpkit/policy.hpp"
#include "sdpkit/recursion.hpp"

using namespace sdp;

namespace {

const SamplingPlan kExhaustive = SamplingPlan::exhaustive();

} // namespace

TEST_CASE("toy instance reproduces its published optimum") {
    const auto toy = build_toy_inventory();
    const Solution solution = forward_recursion(toy.model, kExhaustive, toy.initial_state);
    CHECK(solution.values.value_at(toy.initial_state) == doctest::Approx(16.25).epsilon(1e-12));
    CHECK(solution.policy.action_at(toy.initial_state).magnitude == 3.0);
}

TEST_CASE("toy stage-2 reachable levels") {
    const auto toy = build_toy_inventory();
    std::set<double> levels;
    for (const Action& a : feasible_actions(toy.model, toy.initial_state)) {
        for (const auto& [outcome, mass] : toy.model.stage_distributions[0].support()) {
            levels.insert(apply_transition(toy.model, toy.initial_state, a, outcome).level);
        }
    }
    CHECK(levels == std::set<double>{0.0, 1.0, 2.0, 3.0});
}

TEST_CASE("removing the salvage credit cannot cheapen the toy optimum") {
    ToyInventoryParams params;
    params.salvage_value = 0.0;
    const auto no_salvage = build_toy_inventory(params);
    const Solution solution =
        forward_recursion(no_salvage.model, kExhaustive, no_salvage.initial_state);
    CHECK(solution.values.value_at(no_salvage.initial_state) > 16.25);
}

TEST_CASE("toy overrides reject broken parameter sets") {
    ToyInventoryParams params;
    params.capacity = 2.5; // grid span no longer a step multiple
    CHECK_THROWS_AS(build_toy_inventory(params), ModelError);

    params = ToyInventoryParams{};
    params.horizon = 0;
    CHECK_THROWS_AS(build_toy_inventory(params), ModelError);

    params = ToyInventoryParams{};
    params.demand_pmf = {{1.0, 0.6}, {2.0, 0.6}};
    CHECK_THROWS_AS(build_toy_inventory(params), ModelError);
}

TEST_CASE("scarf instance stays inside the published tolerance band") {
    const auto scarf = build_scarf();
    const Solution solution = backward_recursion(scarf.model, kExhaustive);
    const double etc = solution.values.value_at(scarf.initial_state);

    const double reference = 567.7537178866613;
    CHECK(std::abs(etc - reference) / reference <= 0.005);
    CHECK(std::abs(solution.policy.action_at(scarf.initial_state).magnitude - 91.0) <= 1.0);
}

TEST_CASE("a harsher backorder penalty never lowers the initial order") {
    const auto base = build_scarf();
    const Solution base_solution = backward_recursion(base.model, kExhaustive);
    const double base_action =
        base_solution.policy.action_at(base.initial_state).magnitude;

    ScarfParams harsh;
    harsh.penalty_cost = 100.0;
    const auto instance = build_scarf(harsh);
    const Solution solution = backward_recursion(instance.model, kExhaustive);
    CHECK(solution.policy.action_at(instance.initial_state).magnitude >= base_action);
}

TEST_CASE("single-period scarf matches the newsvendor brute force") {
    ScarfParams params;
    params.mean_demand = {10.0};
    const auto instance = build_scarf(params);
    const Solution solution = backward_recursion(instance.model, kExhaustive);

    const auto expected = oracle::scarf_single_stage(300.0, 0.0, 1.0, 10.0, 10.0, 0.999,
                                                     /*inventory=*/0, /*max_level=*/150);
    CHECK(solution.values.value_at(State{1, 0.0}) ==
          doctest::Approx(expected.expected_cost).epsilon(1e-12));
    CHECK(solution.policy.action_at(State{1, 0.0}).magnitude ==
          static_cast<double>(expected.action));
}

TEST_CASE("solved scarf policy is (s,S)-shaped at every stage") {
    const auto scarf = build_scarf();
    const Solution solution = backward_recursion(scarf.model, kExhaustive);
    for (int stage = 1; stage <= scarf.model.horizon; ++stage) {
        const SsExtraction extraction =
            extract_sS(solution.policy, stage, scarf.model.grid);
        CHECK(extraction.kind == SsExtraction::Kind::ss_policy);
        CHECK(extraction.reorder_threshold <= extraction.order_up_to);
    }
    // Stage-1 order-up-to level implied by the initial action at level 0.
    const SsExtraction first = extract_sS(solution.policy, 1, scarf.model.grid);
    CHECK(first.order_up_to == 91.0);
}

TEST_CASE("toy optimal policy respects constraints along every demand path") {
    const auto toy = build_toy_inventory();
    const Solution solution = forward_recursion(toy.model, kExhaustive, toy.initial_state);

    // All 8 demand paths.
    for (unsigned path = 0; path < 8; ++path) {
        State s = toy.initial_state;
        for (int t = 1; t <= toy.model.horizon; ++t) {
            const double demand = ((path >> (t - 1)) & 1u) ? 2.0 : 1.0;
            const Action a = solution.policy.action_at(s);
            const double closing = s.level + a.magnitude - demand;
            CHECK(closing >= 0.0);                       // no backorders
            CHECK(s.level + a.magnitude - 1.0 <= 3.0);   // capacity under min demand
            if (t < toy.model.horizon) {
                s = apply_transition(toy.model, s, a, demand);
            }
        }
    }
}

TEST_CASE("builders are pure") {
    const auto a = build_scarf();
    const auto b = build_scarf();
    const Solution sa = backward_recursion(a.model, kExhaustive);
    const Solution sb = backward_recursion(b.model, kExhaustive);
    CHECK(sa.values == sb.values);
    CHECK(sa.policy == sb.policy);

    CHECK(a.name == "scarf");
    CHECK(a.initial_state == State{1, 0.0});
    CHECK(a.parent_distributions.size() == 6);
}
