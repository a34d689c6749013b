#include "tailfit/simulation.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "tailfit/csv.hpp"
#include "tailfit/errors.hpp"
#include "tailfit/rng.hpp"

namespace tailfit {

namespace {

const char* kind_name(EstimatorSpec::Kind kind) {
  switch (kind) {
    case EstimatorSpec::Kind::wls: return "wls";
    case EstimatorSpec::Kind::hill: return "hill";
    case EstimatorSpec::Kind::pickands: return "pickands";
    case EstimatorSpec::Kind::dedh: return "dedh";
  }
  return "?";
}

void validate_plan(const SimulationPlan& plan) {
  if (plan.alphas.empty()) throw ConfigError("plan: no alpha values");
  for (double alpha : plan.alphas)
    if (!(alpha > 0.0)) throw ConfigError("plan: alphas must be > 0");
  if (plan.reps < 1) throw ConfigError("plan: reps must be >= 1");
  if (plan.n < 1) throw ConfigError("plan: n must be >= 1");
  if (plan.estimators.empty()) throw ConfigError("plan: no estimators");
  if (plan.family == ModelFamily::hall) {
    if (!(plan.hall_d1 > 0.0)) throw ConfigError("plan: hall d1 must be > 0");
    if (!(plan.hall_beta > 0.0)) throw ConfigError("plan: hall beta must be > 0");
  }
  for (const EstimatorSpec& spec : plan.estimators) {
    switch (spec.kind) {
      case EstimatorSpec::Kind::wls:
        build_design(plan.n, spec.config);  // throws when infeasible
        break;
      case EstimatorSpec::Kind::hill:
      case EstimatorSpec::Kind::dedh:
        if (spec.k < 1 || spec.k >= plan.n)
          throw ConfigError(std::string(kind_name(spec.kind)) +
                            ": requires 1 <= k < n");
        break;
      case EstimatorSpec::Kind::pickands:
        if (spec.k < 1 || 4 * spec.k > plan.n)
          throw ConfigError("pickands: requires 4k <= n");
        break;
    }
  }
}

}  // namespace

std::string EstimatorSpec::params_string() const {
  if (kind == Kind::wls)
    return "ptilde=" + std::to_string(config.p_tilde) +
           ";a=" + format_double(config.a) + ";b=" + format_double(config.b) +
           ";weight=" + weight_string(config.weight);
  return "k=" + std::to_string(k);
}

double EstimatorSpec::evaluate(const OrderedSample& sample) const {
  switch (kind) {
    case Kind::wls:
      return wls_fit(attach_response(build_design(sample.n(), config), sample))
          .alpha_hat;
    case Kind::hill: return hill(sample, k);
    case Kind::pickands: return pickands(sample, k);
    case Kind::dedh: return dedh(sample, k);
  }
  throw DomainError("estimator: unknown kind");
}

EstimatorSpec wls_estimator(std::string label, const RegressionConfig& config) {
  validate(config);
  EstimatorSpec spec;
  spec.kind = EstimatorSpec::Kind::wls;
  spec.label = std::move(label);
  spec.config = config;
  return spec;
}

EstimatorSpec hill_estimator(std::size_t k) {
  EstimatorSpec spec;
  spec.kind = EstimatorSpec::Kind::hill;
  spec.label = "hill";
  spec.k = k;
  return spec;
}

EstimatorSpec pickands_estimator(std::size_t k) {
  EstimatorSpec spec;
  spec.kind = EstimatorSpec::Kind::pickands;
  spec.label = "pickands";
  spec.k = k;
  return spec;
}

EstimatorSpec dedh_estimator(std::size_t k) {
  EstimatorSpec spec;
  spec.kind = EstimatorSpec::Kind::dedh;
  spec.label = "dedh";
  spec.k = k;
  return spec;
}

TailModel SimulationPlan::make_model(double alpha) const {
  if (family == ModelFamily::hall)
    return Hall{alpha, hall_d1, hall_d2, hall_beta};
  return StrictPareto{alpha};
}

std::string plan_echo_string(const SimulationPlan& plan) {
  std::string echo = "model=";
  if (plan.family == ModelFamily::hall)
    echo += "hall;d1=" + format_double(plan.hall_d1) +
            ";d2=" + format_double(plan.hall_d2) +
            ";beta=" + format_double(plan.hall_beta);
  else
    echo += "pareto";
  echo += " n=" + std::to_string(plan.n) + " reps=" + std::to_string(plan.reps) +
          " seed=" + std::to_string(plan.base_seed) + " alphas=";
  for (std::size_t i = 0; i < plan.alphas.size(); ++i) {
    if (i) echo += ",";
    echo += format_double(plan.alphas[i]);
  }
  echo += " estimators=";
  for (std::size_t i = 0; i < plan.estimators.size(); ++i) {
    if (i) echo += ",";
    const EstimatorSpec& spec = plan.estimators[i];
    echo += (spec.label.empty() ? kind_name(spec.kind) : spec.label);
    echo += "{" + spec.params_string() + "}";
  }
  return echo;
}

MeanMse aggregate(const std::vector<double>& estimates, double alpha) {
  if (estimates.empty()) throw DomainError("aggregate: empty estimate vector");
  // Neumaier compensated sums.
  double sum = 0.0, comp = 0.0;
  double sq_sum = 0.0, sq_comp = 0.0;
  for (double x : estimates) {
    double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
    const double dev = (x - alpha) * (x - alpha);
    t = sq_sum + dev;
    sq_comp +=
        (std::abs(sq_sum) >= std::abs(dev)) ? (sq_sum - t) + dev : (dev - t) + sq_sum;
    sq_sum = t;
  }
  const double m = static_cast<double>(estimates.size());
  return MeanMse{(sum + comp) / m, (sq_sum + sq_comp) / m};
}

std::size_t worker_count() {
  if (const char* env = std::getenv("TAILFIT_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0)
      return static_cast<std::size_t>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

SimulationReport run_plan(const SimulationPlan& plan) {
  validate_plan(plan);

  const std::size_t n_alphas = plan.alphas.size();
  const std::size_t n_estimators = plan.estimators.size();
  const std::size_t tasks = n_alphas * plan.reps;

  // estimates[(alpha_idx * reps + rep) * n_estimators + e]; NaN marks failure.
  std::vector<double> estimates(
      tasks * n_estimators, std::numeric_limits<double>::quiet_NaN());

  const auto draw = [&plan](const TailModel& model, std::size_t n,
                            std::uint64_t seed) {
    if (plan.sampler) return plan.sampler(model, n, seed);
    SplitMix64 rng(seed);
    return sample(model, n, rng);
  };

  const auto run_task = [&](std::size_t task) {
    const std::size_t alpha_idx = task / plan.reps;
    const std::size_t rep = task % plan.reps;
    const TailModel model = plan.make_model(plan.alphas[alpha_idx]);
    const OrderedSample sample_data =
        draw(model, plan.n, stream_seed(plan.base_seed, alpha_idx, rep));
    for (std::size_t e = 0; e < n_estimators; ++e) {
      double value;
      try {
        value = plan.estimators[e].evaluate(sample_data);
      } catch (const NumericError&) {
        continue;  // counted as a failed replication for this estimator
      }
      if (std::isfinite(value)) estimates[task * n_estimators + e] = value;
    }
  };

  const std::size_t n_workers = std::min(worker_count(), tasks);
  if (n_workers <= 1) {
    for (std::size_t task = 0; task < tasks; ++task) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      workers.emplace_back([&] {
        for (;;) {
          const std::size_t task = next.fetch_add(1);
          if (task >= tasks) return;
          try {
            run_task(task);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
  }

  SimulationReport report;
  report.plan_echo = plan_echo_string(plan);
  report.rows.reserve(n_alphas * n_estimators);
  std::vector<double> cell;
  cell.reserve(plan.reps);
  for (std::size_t alpha_idx = 0; alpha_idx < n_alphas; ++alpha_idx) {
    for (std::size_t e = 0; e < n_estimators; ++e) {
      cell.clear();
      for (std::size_t rep = 0; rep < plan.reps; ++rep) {
        const double value =
            estimates[(alpha_idx * plan.reps + rep) * n_estimators + e];
        if (!std::isnan(value)) cell.push_back(value);
      }
      ReportRow row;
      row.model = plan.family == ModelFamily::hall ? "hall" : "pareto";
      row.alpha = plan.alphas[alpha_idx];
      row.estimator = plan.estimators[e].label.empty()
                          ? kind_name(plan.estimators[e].kind)
                          : plan.estimators[e].label;
      row.params = plan.estimators[e].params_string();
      row.reps = plan.reps;
      row.failed = plan.reps - cell.size();
      if (cell.empty()) {
        row.mean = std::numeric_limits<double>::quiet_NaN();
        row.mse = std::numeric_limits<double>::quiet_NaN();
      } else {
        const MeanMse stats = aggregate(cell, plan.alphas[alpha_idx]);
        row.mean = stats.mean;
        row.mse = stats.mse;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace tailfit
