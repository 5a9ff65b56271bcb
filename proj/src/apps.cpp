#include "sdpkit/apps.hpp"

#include <algorithm>
#include <cmath>

namespace sdp {

namespace {

// Toy demand never truncates in practice; the quantile only forms the
// TruncatedDistribution wrapper the modelling layer expects.
constexpr double kToyQuantile = 0.999;

} // namespace

ModelInstance build_toy_inventory(const ToyInventoryParams& params) {
    if (params.horizon < 1) {
        throw ModelError("toy-inventory horizon must be at least 1");
    }
    if (params.capacity < 1.0 || params.max_order < 1.0) {
        throw ModelError("toy-inventory capacity and max_order must be at least 1");
    }

    const EmpiricalDiscrete demand(params.demand_pmf);
    double min_demand = params.demand_pmf.front().outcome;
    double max_demand = params.demand_pmf.back().outcome;

    const int horizon = params.horizon;
    const double fixed_cost = params.fixed_cost;
    const double unit_cost = params.unit_cost;
    const double holding_cost = params.holding_cost;
    const double salvage_value = params.salvage_value;
    const double capacity = params.capacity;
    const double max_order = params.max_order;

    ModelDefinition m;
    m.horizon = horizon;
    m.direction = Direction::minimize;
    m.discount = 1.0;
    // Levels stay within [0, capacity]: ordering covers worst-case demand and
    // end-of-period stock under minimum demand never exceeds capacity.
    m.grid = StateGrid(1.0, 0.0, capacity);
    for (int t = 0; t < horizon; ++t) {
        m.stage_distributions.push_back(truncate(demand, kToyQuantile));
    }

    m.action_generator = [=](const State& s) {
        const double min_qty = std::max(max_demand - s.level, 0.0);
        const double count =
            std::min(max_order, capacity + min_demand - s.level - min_qty) + 1.0;
        std::vector<Action> actions;
        for (double i = 0.0; i < count; i += 1.0) {
            actions.push_back(Action{min_qty + i});
        }
        return actions;
    };

    m.transition = [](const State& s, const Action& a, double demand_outcome) {
        return State{s.stage + 1, s.level + a.magnitude - demand_outcome};
    };

    m.random_outcome = [](const State& s, const Action& a, const State& next) {
        return s.level + a.magnitude - next.level;
    };

    m.immediate_value = [=](const State& s, const Action& a, double demand_outcome) {
        const double closing = s.level + a.magnitude - demand_outcome;
        double cost = a.magnitude > 0.0 ? fixed_cost + unit_cost * a.magnitude : 0.0;
        cost += holding_cost * closing;
        cost -= (s.stage == horizon ? salvage_value : 0.0) * closing;
        return cost;
    };

    validate_model(m);

    ModelInstance instance;
    instance.name = "toy-inventory";
    instance.model = std::move(m);
    instance.initial_state = State{1, params.initial_inventory};
    for (int t = 0; t < horizon; ++t) {
        instance.parent_distributions.push_back(
            std::make_shared<EmpiricalDiscrete>(params.demand_pmf));
    }
    return instance;
}

ModelInstance build_scarf(const ScarfParams& params) {
    if (params.mean_demand.empty()) {
        throw ModelError("scarf needs at least one stage of mean demand");
    }

    const int horizon = static_cast<int>(params.mean_demand.size());
    const double fixed_cost = params.fixed_cost;
    const double unit_cost = params.unit_cost;
    const double holding_cost = params.holding_cost;
    const double penalty_cost = params.penalty_cost;
    const double step = params.grid_step;
    const double min_level = params.min_level;
    const double max_level = params.max_level;

    ModelDefinition m;
    m.horizon = horizon;
    m.direction = Direction::minimize;
    m.discount = params.discount;
    m.grid = StateGrid(step, min_level, max_level);

    std::vector<double> stage_upper;
    for (double mean : params.mean_demand) {
        const PoissonDiscrete parent(mean);
        m.stage_distributions.push_back(truncate(parent, params.truncation_quantile));
        stage_upper.push_back(m.stage_distributions.back().upper());
    }

    // Order-up-to every grid level; the lower cut keeps every next state on
    // the grid even under the stage's largest truncated demand.
    m.action_generator = [=](const State& s) {
        const double upper = stage_upper[static_cast<std::size_t>(s.stage - 1)];
        const double min_action = std::max(0.0, min_level + upper - s.level);
        const double max_action = max_level - s.level;
        std::vector<Action> actions;
        if (max_action < min_action) return actions;
        const auto count = static_cast<std::size_t>(
            std::floor((max_action - min_action) / step + 0.5)) + 1;
        actions.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            actions.push_back(Action{min_action + static_cast<double>(i) * step});
        }
        return actions;
    };

    m.transition = [](const State& s, const Action& a, double demand_outcome) {
        return State{s.stage + 1, s.level + a.magnitude - demand_outcome};
    };

    m.random_outcome = [](const State& s, const Action& a, const State& next) {
        return s.level + a.magnitude - next.level;
    };

    m.immediate_value = [=](const State& s, const Action& a, double demand_outcome) {
        const double closing = s.level + a.magnitude - demand_outcome;
        const double ordering =
            a.magnitude > 0.0 ? fixed_cost + unit_cost * a.magnitude : 0.0;
        return ordering + holding_cost * std::max(closing, 0.0) +
               penalty_cost * std::max(-closing, 0.0);
    };

    validate_model(m);

    ModelInstance instance;
    instance.name = "scarf";
    instance.model = std::move(m);
    instance.initial_state = State{1, params.initial_inventory};
    for (double mean : params.mean_demand) {
        instance.parent_distributions.push_back(std::make_shared<PoissonDiscrete>(mean));
    }
    return instance;
}

} // namespace sdp
