#include <doctest.h>

#include <cmath>
#include <set>

#include "sdpkit/apps.hpp"
#include "sdpkit/sampling.hpp"

using namespace sdp;

TEST_CASE("sample waning schedule") {
    SUBCASE("factor 1 keeps the stage-1 size forever") {
        const auto plan = SamplingPlan::simple_random(100, 1.0, 0);
        for (int stage = 1; stage <= 10; ++stage) {
            CHECK(stage_sample_size(plan, stage) == 100);
        }
    }
    SUBCASE("stage 1 always gets max_samples") {
        CHECK(stage_sample_size(SamplingPlan::simple_random(100, 2.0, 0), 1) == 100);
    }
    SUBCASE("hand-computed waning values") {
        const auto plan2 = SamplingPlan::simple_random(100, 2.0, 0);
        const int expected2[] = {100, 50, 25, 13, 7, 4};
        const auto plan15 = SamplingPlan::simple_random(100, 1.5, 0);
        const int expected15[] = {100, 67, 45, 30, 20, 14};
        for (int stage = 1; stage <= 6; ++stage) {
            CHECK(stage_sample_size(plan2, stage) == expected2[stage - 1]);
            CHECK(stage_sample_size(plan15, stage) == expected15[stage - 1]);
        }
    }
    SUBCASE("never below one") {
        const auto plan = SamplingPlan::simple_random(1, 10.0, 0);
        CHECK(stage_sample_size(plan, 10) == 1);
    }
    SUBCASE("nonincreasing in the stage") {
        for (double r : {1.0, 1.3, 2.0, 5.0}) {
            const auto plan = SamplingPlan::simple_random(100, r, 0);
            int prev = stage_sample_size(plan, 1);
            for (int stage = 2; stage <= 20; ++stage) {
                const int n = stage_sample_size(plan, stage);
                CHECK(n <= prev);
                prev = n;
            }
        }
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(SamplingPlan::simple_random(0, 1.0, 0), DomainError);
        CHECK_THROWS_AS(SamplingPlan::simple_random(10, 0.5, 0), DomainError);
        CHECK_THROWS_AS(stage_sample_size(SamplingPlan::exhaustive(), 0), DomainError);
    }
}

TEST_CASE("exhaustive sampling is the identity") {
    const auto dist = truncate(PoissonDiscrete(20.0), 0.999);
    std::mt19937_64 rng(7);
    CHECK(sample_support(SamplingPlan::exhaustive(), dist, 1, rng) == dist);
}

TEST_CASE("a sample covering the support is the identity") {
    const auto dist = truncate(PoissonDiscrete(20.0), 0.999); // 28 outcomes
    const auto plan = SamplingPlan::simple_random(100, 1.0, 42);
    std::mt19937_64 rng(stage_seed(42, 1));
    CHECK(sample_support(plan, dist, 1, rng) == dist);
}

TEST_CASE("simple random sampling draws distinct renormalized outcomes") {
    // 30-point support, uniform masses.
    std::vector<WeightedOutcome> points;
    for (int k = 0; k < 30; ++k) points.push_back({static_cast<double>(k), 1.0 / 30.0});
    const TruncatedDistribution dist(points, 0.0, 29.0, 0.999);
    const auto plan = SamplingPlan::simple_random(5, 1.0, 0);

    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::mt19937_64 rng(stage_seed(seed, 1));
        const auto sampled = sample_support(plan, dist, 1, rng);
        REQUIRE(sampled.size() == 5);

        std::set<double> outcomes;
        double total = 0.0;
        double prev = -1.0;
        for (const auto& [outcome, mass] : sampled.support()) {
            outcomes.insert(outcome);
            total += mass;
            CHECK(outcome > prev);
            CHECK(dist.mass_at(outcome) > 0.0);
            prev = outcome;
        }
        CHECK(outcomes.size() == 5);
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("sampling is deterministic in the seed") {
    const auto dist = truncate(PoissonDiscrete(20.0), 0.999);
    const auto plan = SamplingPlan::simple_random(9, 1.0, 0);

    std::mt19937_64 rng_a(stage_seed(123, 3));
    std::mt19937_64 rng_b(stage_seed(123, 3));
    const auto a = sample_support(plan, dist, 3, rng_a);
    const auto b = sample_support(plan, dist, 3, rng_b);
    CHECK(a == b);

    std::mt19937_64 rng_c(stage_seed(124, 3));
    const auto c = sample_support(plan, dist, 3, rng_c);
    CHECK(a != c); // overwhelmingly likely for distinct seeds
}

TEST_CASE("stage seeds differ across stages") {
    std::set<std::uint64_t> seen;
    for (int stage = 1; stage <= 100; ++stage) {
        seen.insert(stage_seed(42, stage));
    }
    CHECK(seen.size() == 100);
}

TEST_CASE("with_sampled_distributions reduces stage supports by the waning rule") {
    const auto instance = build_scarf();
    const auto plan = SamplingPlan::simple_random(25, 2.0, 11);
    const ModelDefinition reduced = with_sampled_distributions(instance.model, plan);

    REQUIRE(reduced.stage_distributions.size() == instance.model.stage_distributions.size());
    for (int stage = 1; stage <= reduced.horizon; ++stage) {
        const auto& original = instance.model.stage_distributions[stage - 1];
        const auto& sampled = reduced.stage_distributions[stage - 1];
        const std::size_t expected = std::min<std::size_t>(
            original.size(), static_cast<std::size_t>(stage_sample_size(plan, stage)));
        CHECK(sampled.size() == expected);
    }

    // Exhaustive plans leave the model untouched.
    const ModelDefinition same = with_sampled_distributions(instance.model,
                                                            SamplingPlan::exhaustive());
    for (int stage = 0; stage < same.horizon; ++stage) {
        CHECK(same.stage_distributions[stage] == instance.model.stage_distributions[stage]);
    }
}
