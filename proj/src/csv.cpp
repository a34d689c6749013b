#include "tailfit/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "tailfit/errors.hpp"
#include "tailfit/simulation.hpp"

namespace tailfit {

std::string format_double(double value) {
  char buffer[64];
  const std::to_chars_result result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const std::from_chars_result result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw ConfigError("parse_double: cannot parse '" + std::string(text) + "'");
  return value;
}

namespace {

std::size_t parse_size(std::string_view text) {
  std::size_t value = 0;
  const std::from_chars_result result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw ConfigError("parse_size: cannot parse '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

constexpr std::string_view kHeader =
    "model,alpha,estimator,params,reps,failed,mean,mse";

}  // namespace

std::string report_to_csv(const SimulationReport& report) {
  std::string csv;
  if (!report.plan_echo.empty()) csv += "# " + report.plan_echo + "\n";
  csv += std::string(kHeader) + "\n";
  for (const ReportRow& row : report.rows) {
    csv += row.model;
    csv += ',';
    csv += format_double(row.alpha);
    csv += ',';
    csv += row.estimator;
    csv += ',';
    csv += row.params;
    csv += ',';
    csv += std::to_string(row.reps);
    csv += ',';
    csv += std::to_string(row.failed);
    csv += ',';
    csv += format_double(row.mean);
    csv += ',';
    csv += format_double(row.mse);
    csv += '\n';
  }
  return csv;
}

SimulationReport parse_report_csv(std::string_view csv) {
  SimulationReport report;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    std::string_view line = csv.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view echo = line.substr(1);
      if (!echo.empty() && echo.front() == ' ') echo.remove_prefix(1);
      report.plan_echo = std::string(echo);
      continue;
    }
    if (!header_seen) {
      if (line != kHeader)
        throw ConfigError("report csv: unexpected header '" +
                          std::string(line) + "'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string_view> fields = split(line, ',');
    if (fields.size() != 8)
      throw ConfigError("report csv: expected 8 fields, got " +
                        std::to_string(fields.size()));
    ReportRow row;
    row.model = std::string(fields[0]);
    row.alpha = parse_double(fields[1]);
    row.estimator = std::string(fields[2]);
    row.params = std::string(fields[3]);
    row.reps = parse_size(fields[4]);
    row.failed = parse_size(fields[5]);
    row.mean = parse_double(fields[6]);
    row.mse = parse_double(fields[7]);
    report.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ConfigError("report csv: missing header");
  return report;
}

}  // namespace tailfit
