#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sdpkit/distributions.hpp"
#include "sdpkit/model.hpp"

namespace sdp {

/// Three-period lot-sizing toy: fixed-plus-linear production cost, equiprobable
/// two-point demand, no backorders, end-of-period capacity, final-period
/// salvage credited per leftover unit.
struct ToyInventoryParams {
    int horizon = 3;
    double fixed_cost = 3.0;
    double unit_cost = 2.0;
    double holding_cost = 1.0;
    double salvage_value = 2.0;
    double capacity = 3.0;
    double max_order = 4.0;
    std::vector<WeightedOutcome> demand_pmf = {{1.0, 0.5}, {2.0, 0.5}};
    double initial_inventory = 1.0;
};

/// Six-period stochastic lot sizing with fixed ordering cost, Poisson demand
/// truncated at a quantile, linear holding and backorder-penalty costs, on a
/// bounded inventory grid.
struct ScarfParams {
    double fixed_cost = 300.0;
    double unit_cost = 0.0;
    double holding_cost = 1.0;
    double penalty_cost = 10.0;
    std::vector<double> mean_demand = {10.0, 20.0, 15.0, 20.0, 15.0, 10.0};
    double truncation_quantile = 0.999;
    double grid_step = 1.0;
    double min_level = -50.0;
    double max_level = 150.0;
    double initial_inventory = 0.0;
    double discount = 1.0;
};

/// A validated bundled model plus its default initial state and the
/// untruncated per-stage parent distributions (used by the simulator's
/// untruncated-demand mode).
struct ModelInstance {
    std::string name;
    ModelDefinition model;
    State initial_state;
    std::vector<std::shared_ptr<const DiscreteDistribution>> parent_distributions;
};

ModelInstance build_toy_inventory(const ToyInventoryParams& params = {});
ModelInstance build_scarf(const ScarfParams& params = {});

} // namespace sdp
