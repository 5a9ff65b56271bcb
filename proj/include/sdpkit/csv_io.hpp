#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sdpkit/recursion.hpp"

namespace sdp {

/// Columns: stage,level,value. Header always present, LF line endings,
/// full double precision.
void write_values_csv(std::ostream& out, const ValueTable& values);
void write_values_csv(const std::string& path, const ValueTable& values);

/// Columns: stage,level,action.
void write_policy_csv(std::ostream& out, const PolicyTable& policy);
void write_policy_csv(const std::string& path, const PolicyTable& policy);

/// Columns: replication,cost. Replications are numbered from 1.
void write_replication_costs_csv(std::ostream& out, const std::vector<double>& costs);
void write_replication_costs_csv(const std::string& path, const std::vector<double>& costs);

} // namespace sdp
