#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sdpkit/apps.hpp"
#include "sdpkit/csv_io.hpp"
#include "sdpkit/policy.hpp"
#include "sdpkit/recursion.hpp"

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string& key, const std::string& text) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("override '" + key + "': '" + text + "' is not a number");
    }
    if (consumed != text.size()) {
        throw ConfigError("override '" + key + "': '" + text + "' is not a number");
    }
    return value;
}

int parse_int(const std::string& key, const std::string& text) {
    const double value = parse_number(key, text);
    const int as_int = static_cast<int>(value);
    if (static_cast<double>(as_int) != value) {
        throw ConfigError("override '" + key + "': '" + text + "' is not an integer");
    }
    return as_int;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) parts.push_back(item);
    return parts;
}

// "1:0.5,2:0.5" -> weighted outcomes
std::vector<sdp::WeightedOutcome> parse_pmf(const std::string& key, const std::string& text) {
    std::vector<sdp::WeightedOutcome> pmf;
    for (const std::string& entry : split(text, ',')) {
        const auto colon = entry.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("override '" + key + "': expected outcome:mass pairs, got '" +
                              entry + "'");
        }
        pmf.push_back({parse_number(key, entry.substr(0, colon)),
                       parse_number(key, entry.substr(colon + 1))});
    }
    return pmf;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> values;
    for (const std::string& entry : split(text, ',')) {
        values.push_back(parse_number(key, entry));
    }
    return values;
}

std::pair<std::string, std::string> split_override(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("override '" + text + "' must have the form key=value");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

void apply_toy_override(sdp::ToyInventoryParams& p, const std::string& key,
                        const std::string& value) {
    if (key == "horizon") p.horizon = parse_int(key, value);
    else if (key == "fixed_cost") p.fixed_cost = parse_number(key, value);
    else if (key == "unit_cost") p.unit_cost = parse_number(key, value);
    else if (key == "holding_cost") p.holding_cost = parse_number(key, value);
    else if (key == "salvage_value") p.salvage_value = parse_number(key, value);
    else if (key == "capacity") p.capacity = parse_number(key, value);
    else if (key == "max_order") p.max_order = parse_number(key, value);
    else if (key == "initial_inventory") p.initial_inventory = parse_number(key, value);
    else if (key == "demand_pmf") p.demand_pmf = parse_pmf(key, value);
    else throw ConfigError("unknown toy-inventory parameter '" + key + "'");
}

void apply_scarf_override(sdp::ScarfParams& p, const std::string& key,
                          const std::string& value) {
    if (key == "fixed_cost") p.fixed_cost = parse_number(key, value);
    else if (key == "unit_cost") p.unit_cost = parse_number(key, value);
    else if (key == "holding_cost") p.holding_cost = parse_number(key, value);
    else if (key == "penalty_cost") p.penalty_cost = parse_number(key, value);
    else if (key == "mean_demand") p.mean_demand = parse_list(key, value);
    else if (key == "truncation_quantile") p.truncation_quantile = parse_number(key, value);
    else if (key == "grid_step") p.grid_step = parse_number(key, value);
    else if (key == "min_level") p.min_level = parse_number(key, value);
    else if (key == "max_level") p.max_level = parse_number(key, value);
    else if (key == "initial_inventory") p.initial_inventory = parse_number(key, value);
    else if (key == "discount") p.discount = parse_number(key, value);
    else throw ConfigError("unknown scarf parameter '" + key + "'");
}

sdp::ModelInstance build_instance(const std::string& model,
                                  const std::vector<std::string>& overrides) {
    if (model == "toy-inventory") {
        sdp::ToyInventoryParams params;
        for (const std::string& entry : overrides) {
            const auto [key, value] = split_override(entry);
            apply_toy_override(params, key, value);
        }
        return sdp::build_toy_inventory(params);
    }
    if (model == "scarf") {
        sdp::ScarfParams params;
        for (const std::string& entry : overrides) {
            const auto [key, value] = split_override(entry);
            apply_scarf_override(params, key, value);
        }
        return sdp::build_scarf(params);
    }
    throw ConfigError("unknown model '" + model + "' (expected toy-inventory or scarf)");
}

struct RunConfig {
    std::string model;
    std::string method = "forward";
    std::string sampling = "exhaustive";
    int max_samples = 100;
    double reduction_factor = 1.0;
    std::uint64_t seed = 0;
    int initial_stage = 1;
    double initial_level = 0.0;
    bool initial_level_set = false;
    bool simulate = false;
    std::int64_t replications = 10000;
    unsigned threads = 1;
    std::vector<std::string> overrides;
    std::string out_policy;
    std::string out_values;
    std::string out_replications;
};

int run_command(const RunConfig& cfg) {
    const sdp::ModelInstance instance = build_instance(cfg.model, cfg.overrides);
    const sdp::ModelDefinition& model = instance.model;

    sdp::SamplingPlan plan;
    if (cfg.sampling == "simple-random") {
        plan = sdp::SamplingPlan::simple_random(cfg.max_samples, cfg.reduction_factor, cfg.seed);
    }

    sdp::State initial = instance.initial_state;
    initial.stage = cfg.initial_stage;
    if (cfg.initial_level_set) initial.level = cfg.initial_level;

    sdp::Solution solution =
        cfg.method == "forward"
            ? sdp::forward_recursion(model, plan, initial)
            : sdp::backward_recursion(model, plan, cfg.threads);
    const sdp::SolveReport report = solution.report_at(initial);

    std::cout << "model: " << instance.name << '\n'
              << "method: " << cfg.method << '\n'
              << "sampling: " << cfg.sampling << '\n'
              << std::fixed << std::setprecision(6)
              << "initial state: stage=" << initial.stage << " level=" << initial.level << '\n'
              << "expected total value: " << report.expected_total_value << '\n'
              << "initial action: " << report.initial_action.magnitude << '\n'
              << "states expanded: " << report.states_expanded << '\n'
              << "wall time: " << report.wall_time.count() << " s\n";

    if (!cfg.out_values.empty()) sdp::write_values_csv(cfg.out_values, solution.values);
    if (!cfg.out_policy.empty()) sdp::write_policy_csv(cfg.out_policy, solution.policy);

    if (cfg.simulate) {
        std::vector<double> costs;
        sdp::SimulationOptions options;
        if (!cfg.out_replications.empty()) {
            // Per-replication export implies replication sampling.
            options.mode = sdp::SimulationMode::monte_carlo;
            options.replication_costs = &costs;
        }
        const sdp::SimulationResult sim = sdp::simulate_policy(
            model, solution.policy, initial, cfg.replications, cfg.seed, options);
        std::cout << "simulation: replications=" << sim.replications
                  << " mean=" << sim.mean_cost << " se=" << sim.standard_error
                  << " ci95=[" << sim.confidence_interval_95.first << ", "
                  << sim.confidence_interval_95.second << "]"
                  << (sim.exhaustive ? " (exhaustive paths)" : " (monte carlo)") << '\n';
        if (!cfg.out_replications.empty()) {
            sdp::write_replication_costs_csv(cfg.out_replications, costs);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon stochastic dynamic programming solver"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool print_config = false;

    CLI::App* run = app.add_subcommand("run", "solve a bundled model and report the results");
    run->set_config("--config", "", "read options from an INI-style config file");
    run->add_option("--model", cfg.model, "model instance: toy-inventory or scarf")
        ->required()
        ->check(CLI::IsMember({"toy-inventory", "scarf"}));
    run->add_option("--method", cfg.method, "solver engine")
        ->check(CLI::IsMember({"forward", "backward"}))
        ->capture_default_str();
    run->add_option("--sampling", cfg.sampling, "scenario scheme")
        ->check(CLI::IsMember({"exhaustive", "simple-random"}))
        ->capture_default_str();
    run->add_option("--max-samples", cfg.max_samples, "stage-1 sample size for simple-random")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--reduction-factor", cfg.reduction_factor,
                    "per-stage sample-size reduction factor (>= 1)")
        ->check(CLI::Range(1.0, 1e9))
        ->capture_default_str();
    run->add_option("--seed", cfg.seed, "master RNG seed")->capture_default_str();
    run->add_option("--initial-stage", cfg.initial_stage, "stage of the initial/query state")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    CLI::Option* level_opt =
        run->add_option("--initial-level", cfg.initial_level,
                        "level of the initial/query state (default: the model's own)");
    run->add_flag("--simulate", cfg.simulate, "validate the policy by simulation");
    run->add_option("--replications", cfg.replications, "simulation replications")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--threads", cfg.threads,
                    "solver threads for backward sweeps (0 = hardware concurrency)")
        ->capture_default_str();
    run->add_option("--set", cfg.overrides,
                    "model parameter override key=value (repeatable)");
    run->add_option("--out-policy", cfg.out_policy, "write the policy table CSV here");
    run->add_option("--out-values", cfg.out_values, "write the value table CSV here");
    run->add_option("--out-replications", cfg.out_replications,
                    "write per-replication simulation costs CSV here");
    run->add_flag("--print-config", print_config,
                  "echo the effective configuration and exit without solving")
        ->configurable(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    cfg.initial_level_set = level_opt->count() > 0;

    if (print_config) {
        std::cout << run->config_to_str(true, false);
        return 0;
    }

    try {
        return run_command(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sdp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
