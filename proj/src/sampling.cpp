#include "sdpkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdp {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014); fully portable.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform
// that implements mt19937_64 per the standard.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

SamplingPlan SamplingPlan::simple_random(int max_samples, double reduction_factor,
                                         std::uint64_t seed) {
    if (max_samples < 1) {
        throw DomainError("max_samples must be at least 1");
    }
    if (!(reduction_factor >= 1.0)) {
        throw DomainError("reduction_factor must be at least 1");
    }
    SamplingPlan plan;
    plan.scheme = SamplingScheme::simple_random;
    plan.max_samples = max_samples;
    plan.reduction_factor = reduction_factor;
    plan.seed = seed;
    return plan;
}

int stage_sample_size(const SamplingPlan& plan, int stage) {
    if (stage < 1) {
        throw DomainError("stage index must be at least 1");
    }
    const double waned = static_cast<double>(plan.max_samples) /
                         std::pow(plan.reduction_factor, static_cast<double>(stage - 1));
    const int n = static_cast<int>(std::ceil(waned));
    return std::max(n, 1);
}

std::uint64_t stage_seed(std::uint64_t master_seed, int stage) {
    return splitmix64(master_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(stage));
}

TruncatedDistribution sample_support(const SamplingPlan& plan, const TruncatedDistribution& d,
                                     int stage, std::mt19937_64& rng_state) {
    if (plan.scheme == SamplingScheme::exhaustive) return d;

    const int want = stage_sample_size(plan, stage);
    const std::vector<WeightedOutcome>& support = d.support();
    if (static_cast<std::size_t>(want) >= support.size()) return d;

    // Mass-weighted draws without replacement.
    std::vector<std::size_t> remaining(support.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    double remaining_mass = 1.0;

    std::vector<std::size_t> selected;
    selected.reserve(static_cast<std::size_t>(want));
    for (int draw = 0; draw < want; ++draw) {
        const double u = uniform01(rng_state) * remaining_mass;
        double acc = 0.0;
        std::size_t pick = remaining.size() - 1;
        for (std::size_t j = 0; j < remaining.size(); ++j) {
            acc += support[remaining[j]].mass;
            if (u < acc) {
                pick = j;
                break;
            }
        }
        selected.push_back(remaining[pick]);
        remaining_mass -= support[remaining[pick]].mass;
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    std::sort(selected.begin(), selected.end());
    double total = 0.0;
    for (std::size_t idx : selected) total += support[idx].mass;

    std::vector<WeightedOutcome> sampled;
    sampled.reserve(selected.size());
    for (std::size_t idx : selected) {
        sampled.push_back({support[idx].outcome, support[idx].mass / total});
    }
    return TruncatedDistribution(std::move(sampled), d.lower(), d.upper(), d.source_quantile());
}

ModelDefinition with_sampled_distributions(const ModelDefinition& m, const SamplingPlan& plan) {
    if (plan.scheme == SamplingScheme::exhaustive) return m;

    ModelDefinition reduced = m;
    reduced.stage_distributions.clear();
    reduced.stage_distributions.reserve(m.stage_distributions.size());
    for (int stage = 1; stage <= m.horizon; ++stage) {
        std::mt19937_64 rng(stage_seed(plan.seed, stage));
        reduced.stage_distributions.push_back(
            sample_support(plan, m.stage_distributions[static_cast<std::size_t>(stage - 1)],
                           stage, rng));
    }
    return reduced;
}

} // namespace sdp
