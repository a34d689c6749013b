#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tailfit {

struct SimulationReport;

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Parses a double produced by format_double; throws ConfigError on junk.
double parse_double(std::string_view text);

// Report as CSV: one '#' plan-echo line, the header
// model,alpha,estimator,params,reps,failed,mean,mse and one row per cell.
std::string report_to_csv(const SimulationReport& report);

// Inverse of report_to_csv ('#' lines are treated as plan echo).
SimulationReport parse_report_csv(std::string_view csv);

}  // namespace tailfit
