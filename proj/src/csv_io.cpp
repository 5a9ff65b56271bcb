#include "sdpkit/csv_io.hpp"

#include <cstdio>
#include <fstream>

namespace sdp {

namespace {

std::string full_precision(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    return out;
}

} // namespace

void write_values_csv(std::ostream& out, const ValueTable& values) {
    out << "stage,level,value\n";
    for (const auto& [state, value] : values.entries()) {
        out << state.stage << ',' << full_precision(state.level) << ','
            << full_precision(value) << '\n';
    }
}

void write_values_csv(const std::string& path, const ValueTable& values) {
    auto out = open_or_throw(path);
    write_values_csv(out, values);
}

void write_policy_csv(std::ostream& out, const PolicyTable& policy) {
    out << "stage,level,action\n";
    for (const auto& [state, action] : policy.entries()) {
        out << state.stage << ',' << full_precision(state.level) << ','
            << full_precision(action.magnitude) << '\n';
    }
}

void write_policy_csv(const std::string& path, const PolicyTable& policy) {
    auto out = open_or_throw(path);
    write_policy_csv(out, policy);
}

void write_replication_costs_csv(std::ostream& out, const std::vector<double>& costs) {
    out << "replication,cost\n";
    for (std::size_t i = 0; i < costs.size(); ++i) {
        out << (i + 1) << ',' << full_precision(costs[i]) << '\n';
    }
}

void write_replication_costs_csv(const std::string& path, const std::vector<double>& costs) {
    auto out = open_or_throw(path);
    write_replication_costs_csv(out, costs);
}

} // namespace sdp
