#pragma once

#include <cstdint>
#include <random>

#include "sdpkit/distributions.hpp"
#include "sdpkit/model.hpp"

namespace sdp {

enum class SamplingScheme { exhaustive, simple_random };

/// Scenario-reduction parameters. An exhaustive plan ignores max_samples,
/// reduction_factor and seed.
struct SamplingPlan {
    SamplingScheme scheme = SamplingScheme::exhaustive;
    int max_samples = 1;
    double reduction_factor = 1.0;
    std::uint64_t seed = 0;

    static SamplingPlan exhaustive() { return {}; }
    static SamplingPlan simple_random(int max_samples, double reduction_factor,
                                      std::uint64_t seed);
};

/// Per-stage sample size: ceil(max_samples / reduction_factor^(stage-1)),
/// never below 1. Stage 1 always receives the full max_samples.
int stage_sample_size(const SamplingPlan& plan, int stage);

/// Deterministic per-stage RNG seed derived from the master seed by the
/// splitmix64 finalizer applied to (seed + stage * 0x9e3779b97f4a7c15).
/// Stage RNGs are std::mt19937_64 instances seeded with this value.
std::uint64_t stage_seed(std::uint64_t master_seed, int stage);

/// Reduce the stage support. Exhaustive plans return d unchanged, as do
/// simple-random plans whose stage sample size covers the whole support.
/// Otherwise stage_sample_size(plan, stage) distinct outcomes are drawn
/// without replacement with probability proportional to mass, and the selected
/// masses are renormalized to sum to 1.
TruncatedDistribution sample_support(const SamplingPlan& plan, const TruncatedDistribution& d,
                                     int stage, std::mt19937_64& rng_state);

/// Copy of m whose stage distributions are replaced by their sampled
/// reductions; stage t uses an RNG seeded with stage_seed(plan.seed, t).
/// Exhaustive plans return m unchanged.
ModelDefinition with_sampled_distributions(const ModelDefinition& m, const SamplingPlan& plan);

} // namespace sdp
