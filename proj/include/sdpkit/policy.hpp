#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "sdpkit/model.hpp"
#include "sdpkit/recursion.hpp"

namespace sdp {

struct SimulationResult {
    std::int64_t replications = 0;
    double mean_cost = 0.0;
    double standard_error = 0.0;
    std::pair<double, double> confidence_interval_95{0.0, 0.0};
    /// True when every outcome path was enumerated instead of sampled; the
    /// mean is then exact and the standard error 0.
    bool exhaustive = false;
};

enum class SimulationMode {
    /// Enumerate all paths when their count is at most 10^6, otherwise sample.
    automatic,
    monte_carlo,
    exhaustive,
};

struct SimulationOptions {
    SimulationMode mode = SimulationMode::automatic;
    /// Draw demand from the untruncated parent distributions instead of the
    /// model's truncated ones (sensitivity studies). Requires parents.
    bool untruncated_demand = false;
    std::vector<std::shared_ptr<const DiscreteDistribution>> parents;
    /// When set, receives one discounted path cost per replication
    /// (Monte Carlo mode only).
    std::vector<double>* replication_costs = nullptr;
};

/// Expected discounted total cost of following pt from s0, estimated by
/// independent demand paths drawn from the model's stage distributions.
/// Replication r uses an RNG seeded with stage_seed(seed, r), so results are
/// bit-reproducible for a fixed seed. Throws PolicyGapError when a path
/// reaches a state the policy does not cover.
SimulationResult simulate_policy(const ModelDefinition& m, const PolicyTable& pt,
                                 const State& s0, std::int64_t replications,
                                 std::uint64_t seed, const SimulationOptions& options = {});

/// Outcome of reading a reorder-threshold / order-up-to structure off a
/// solved policy at one stage.
struct SsExtraction {
    enum class Kind {
        /// action(x) = 0 for x >= reorder_threshold, order up to order_up_to below it.
        ss_policy,
        /// The policy never orders; reorder_threshold is -infinity.
        never_order,
        /// The policy does not have the two-threshold shape.
        not_ss,
    };
    Kind kind = Kind::not_ss;
    double reorder_threshold = std::numeric_limits<double>::quiet_NaN();
    double order_up_to = std::numeric_limits<double>::quiet_NaN();
};

/// Inspect the stage's policy over grid levels in [min_level, max_level].
/// Requires pt to cover every grid state of that stage in the window.
SsExtraction extract_sS(const PolicyTable& pt, int stage, const StateGrid& grid,
                        double min_level, double max_level);
SsExtraction extract_sS(const PolicyTable& pt, int stage, const StateGrid& grid);

} // namespace sdp
