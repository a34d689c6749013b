#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tailfit/estimators.hpp"
#include "tailfit/models.hpp"

namespace tailfit {

// One estimator entry of a simulation plan. WLS and OLS share the wls kind
// and differ only in label and weight; the baselines carry a sample fraction k.
struct EstimatorSpec {
  enum class Kind { wls, hill, pickands, dedh };

  Kind kind = Kind::hill;
  std::string label;
  RegressionConfig config;  // wls only
  std::size_t k = 0;        // hill/pickands/dedh only

  std::string params_string() const;
  double evaluate(const OrderedSample& sample) const;
};

EstimatorSpec wls_estimator(std::string label, const RegressionConfig& config);
EstimatorSpec hill_estimator(std::size_t k);
EstimatorSpec pickands_estimator(std::size_t k);
EstimatorSpec dedh_estimator(std::size_t k);

enum class ModelFamily { pareto, hall };

struct SimulationPlan {
  ModelFamily family = ModelFamily::pareto;
  double hall_d1 = 0.4;
  double hall_d2 = 1.0;
  double hall_beta = 0.01;
  std::vector<double> alphas;
  std::size_t n = 5000;
  std::size_t reps = 1000;
  std::uint64_t base_seed = 0;
  std::vector<EstimatorSpec> estimators;

  // Replaces the random draw when set; used by tests to force fixture samples.
  std::function<OrderedSample(const TailModel&, std::size_t, std::uint64_t)>
      sampler;

  TailModel make_model(double alpha) const;
};

struct ReportRow {
  std::string model;
  double alpha = 0.0;
  std::string estimator;
  std::string params;
  std::size_t reps = 0;
  std::size_t failed = 0;
  double mean = 0.0;
  double mse = 0.0;
};

struct SimulationReport {
  std::string plan_echo;
  std::vector<ReportRow> rows;  // plan order: alphas outer, estimators inner
};

struct MeanMse {
  double mean = 0.0;
  double mse = 0.0;
};

// Mean and mean squared deviation from alpha, with compensated summation.
// Throws DomainError on an empty vector.
MeanMse aggregate(const std::vector<double>& estimates, double alpha);

// One-line echo of the plan, embedded as a '#' comment in CSV output.
std::string plan_echo_string(const SimulationPlan& plan);

// Worker pool size: TAILFIT_THREADS when set and nonzero, else the hardware
// default. Read once per run_plan call.
std::size_t worker_count();

// Runs every replication of the plan. Each replication draws one sample with
// stream seed base_seed ^ mix(alpha index, rep) and feeds it to every
// estimator; failures (NumericError or a non-finite estimate) are counted and
// excluded from the aggregates. Aggregation happens in ascending rep order,
// so the report is identical at any thread count.
SimulationReport run_plan(const SimulationPlan& plan);

}  // namespace tailfit
