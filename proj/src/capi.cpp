#include "tailfit.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "tailfit/asymptotics.hpp"
#include "tailfit/csv.hpp"
#include "tailfit/errors.hpp"
#include "tailfit/estimators.hpp"
#include "tailfit/models.hpp"
#include "tailfit/rng.hpp"
#include "tailfit/simulation.hpp"

struct tf_model {
  tailfit::TailModel model;
};

struct tf_sample {
  tailfit::OrderedSample sample;
};

struct tf_sim_plan {
  tailfit::SimulationPlan plan;
};

struct tf_report {
  tailfit::SimulationReport report;
};

namespace {

thread_local std::string g_last_error;

tf_status fail(tf_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs the body and converts exceptions to status codes.
template <class Fn>
tf_status guarded(Fn&& body) {
  try {
    body();
    return TF_OK;
  } catch (const tailfit::IllConditionedError& err) {
    return fail(TF_ERR_ILL_CONDITIONED, err.what());
  } catch (const tailfit::NumericError& err) {
    return fail(TF_ERR_NUMERIC, err.what());
  } catch (const tailfit::ConfigError& err) {
    return fail(TF_ERR_CONFIG, err.what());
  } catch (const tailfit::DomainError& err) {
    return fail(TF_ERR_DOMAIN, err.what());
  } catch (const std::bad_alloc&) {
    return fail(TF_ERR_NUMERIC, "out of memory");
  } catch (const std::exception& err) {
    return fail(TF_ERR_NUMERIC, err.what());
  }
}

tf_status require(const void* pointer, const char* name) {
  if (pointer != nullptr) return TF_OK;
  g_last_error = std::string(name) + " must not be NULL";
  return TF_ERR_NULL;
}

tailfit::RegressionConfig to_config(const tf_regression_config& config) {
  tailfit::RegressionConfig out;
  out.a = config.a;
  out.b = config.b;
  out.p_tilde = config.ptilde;
  if (config.weight == TF_WEIGHT_POWER)
    out.weight = tailfit::Power{config.weight_c, config.weight_k};
  else
    out.weight = tailfit::Uniform{};
  return out;
}

int effective_panels(int panels) {
  return panels > 0 ? panels : tailfit::kDefaultPanels;
}

tf_status make_model(tailfit::TailModel model, tf_model** out) {
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    tailfit::validate(model);
    *out = new tf_model{std::move(model)};
  });
}

}  // namespace

extern "C" {

const char* tf_last_error(void) { return g_last_error.c_str(); }

tf_status tf_model_pareto(double alpha, tf_model** out) {
  return make_model(tailfit::StrictPareto{alpha}, out);
}

tf_status tf_model_hall(double alpha, double d1, double d2, double beta,
                        tf_model** out) {
  return make_model(tailfit::Hall{alpha, d1, d2, beta}, out);
}

tf_status tf_model_trig(double alpha, const double* theta, size_t theta_len,
                        tf_model** out) {
  if (tf_status status = require(theta, "theta"); status != TF_OK) return status;
  return make_model(
      tailfit::TrigSeries{alpha, std::vector<double>(theta, theta + theta_len)},
      out);
}

void tf_model_free(tf_model* model) { delete model; }

tf_status tf_model_upper_quantile(const tf_model* model, double s, double* out) {
  if (tf_status status = require(model, "model"); status != TF_OK) return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] { *out = tailfit::upper_quantile(model->model, s); });
}

tf_status tf_model_density_quantile(const tf_model* model, double s,
                                    double* out) {
  if (tf_status status = require(model, "model"); status != TF_OK) return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] { *out = tailfit::density_quantile(model->model, s); });
}

tf_status tf_sample_draw(const tf_model* model, size_t n, uint64_t seed,
                         tf_sample** out) {
  if (tf_status status = require(model, "model"); status != TF_OK) return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    tailfit::SplitMix64 rng(seed);
    *out = new tf_sample{tailfit::sample(model->model, n, rng)};
  });
}

tf_status tf_sample_from_data(const double* values, size_t n, tf_sample** out) {
  if (tf_status status = require(values, "values"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    if (n < 1) throw tailfit::DomainError("sample: n must be >= 1");
    *out = new tf_sample{tailfit::OrderedSample::from_unsorted(
        std::vector<double>(values, values + n))};
  });
}

void tf_sample_free(tf_sample* sample) { delete sample; }

size_t tf_sample_size(const tf_sample* sample) {
  return sample ? sample->sample.n() : 0;
}

const double* tf_sample_values(const tf_sample* sample) {
  return sample ? sample->sample.values().data() : nullptr;
}

tf_status tf_hill(const tf_sample* sample, size_t k, double* out) {
  if (tf_status status = require(sample, "sample"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] { *out = tailfit::hill(sample->sample, k); });
}

tf_status tf_pickands(const tf_sample* sample, size_t k, double* out) {
  if (tf_status status = require(sample, "sample"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] { *out = tailfit::pickands(sample->sample, k); });
}

tf_status tf_dedh(const tf_sample* sample, size_t k, double* out) {
  if (tf_status status = require(sample, "sample"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] { *out = tailfit::dedh(sample->sample, k); });
}

tf_status tf_wls_fit(const tf_sample* sample, const tf_regression_config* config,
                     double* alpha_out, double* theta_out,
                     double* condition_out) {
  if (tf_status status = require(sample, "sample"); status != TF_OK)
    return status;
  if (tf_status status = require(config, "config"); status != TF_OK)
    return status;
  if (tf_status status = require(alpha_out, "alpha_out"); status != TF_OK)
    return status;
  return guarded([&] {
    const tailfit::FitResult fit = tailfit::wls_fit(tailfit::attach_response(
        tailfit::build_design(sample->sample.n(), to_config(*config)),
        sample->sample));
    *alpha_out = fit.alpha_hat;
    if (theta_out != nullptr)
      std::memcpy(theta_out, fit.theta_hat.data(),
                  fit.theta_hat.size() * sizeof(double));
    if (condition_out != nullptr) *condition_out = fit.condition_estimate;
  });
}

tf_status tf_limit_matrix(const tf_regression_config* config, int panels,
                          double* out) {
  if (tf_status status = require(config, "config"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    const tailfit::Matrix m =
        tailfit::limit_matrix(to_config(*config), effective_panels(panels));
    std::memcpy(out, m.data.data(), m.data.size() * sizeof(double));
  });
}

tf_status tf_gr_coefficients(const tf_regression_config* config, int panels,
                             double* out) {
  if (tf_status status = require(config, "config"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    const tailfit::GrFunction gr = tailfit::g_r_coefficients(
        to_config(*config), effective_panels(panels));
    std::memcpy(out, gr.v.data(), gr.v.size() * sizeof(double));
  });
}

tf_status tf_asymptotic_variance(const tf_model* model,
                                 const tf_regression_config* config, int panels,
                                 double* out) {
  if (tf_status status = require(model, "model"); status != TF_OK) return status;
  if (tf_status status = require(config, "config"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    *out = tailfit::asymptotic_variance(model->model, to_config(*config),
                                        effective_panels(panels));
  });
}

tf_status tf_plan_new(const double* alphas, size_t n_alphas, size_t n,
                      size_t reps, uint64_t seed, tf_sim_plan** out) {
  if (tf_status status = require(alphas, "alphas"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    auto plan = std::make_unique<tf_sim_plan>();
    plan->plan.family = tailfit::ModelFamily::pareto;
    plan->plan.alphas.assign(alphas, alphas + n_alphas);
    plan->plan.n = n;
    plan->plan.reps = reps;
    plan->plan.base_seed = seed;
    *out = plan.release();
  });
}

tf_status tf_plan_set_hall(tf_sim_plan* plan, double d1, double d2,
                           double beta) {
  if (tf_status status = require(plan, "plan"); status != TF_OK) return status;
  return guarded([&] {
    plan->plan.family = tailfit::ModelFamily::hall;
    plan->plan.hall_d1 = d1;
    plan->plan.hall_d2 = d2;
    plan->plan.hall_beta = beta;
  });
}

tf_status tf_plan_add_wls(tf_sim_plan* plan, const char* label,
                          const tf_regression_config* config) {
  if (tf_status status = require(plan, "plan"); status != TF_OK) return status;
  if (tf_status status = require(label, "label"); status != TF_OK) return status;
  if (tf_status status = require(config, "config"); status != TF_OK)
    return status;
  return guarded([&] {
    plan->plan.estimators.push_back(
        tailfit::wls_estimator(label, to_config(*config)));
  });
}

tf_status tf_plan_add_hill(tf_sim_plan* plan, size_t k) {
  if (tf_status status = require(plan, "plan"); status != TF_OK) return status;
  return guarded([&] { plan->plan.estimators.push_back(tailfit::hill_estimator(k)); });
}

tf_status tf_plan_add_pickands(tf_sim_plan* plan, size_t k) {
  if (tf_status status = require(plan, "plan"); status != TF_OK) return status;
  return guarded(
      [&] { plan->plan.estimators.push_back(tailfit::pickands_estimator(k)); });
}

tf_status tf_plan_add_dedh(tf_sim_plan* plan, size_t k) {
  if (tf_status status = require(plan, "plan"); status != TF_OK) return status;
  return guarded([&] { plan->plan.estimators.push_back(tailfit::dedh_estimator(k)); });
}

void tf_plan_free(tf_sim_plan* plan) { delete plan; }

tf_status tf_plan_run(const tf_sim_plan* plan, tf_report** out) {
  if (tf_status status = require(plan, "plan"); status != TF_OK) return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] { *out = new tf_report{tailfit::run_plan(plan->plan)}; });
}

void tf_report_free(tf_report* report) { delete report; }

size_t tf_report_rows(const tf_report* report) {
  return report ? report->report.rows.size() : 0;
}

tf_status tf_report_row_get(const tf_report* report, size_t index,
                            tf_report_row* out) {
  if (tf_status status = require(report, "report"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  if (index >= report->report.rows.size())
    return fail(TF_ERR_DOMAIN, "report row index out of range");
  const tailfit::ReportRow& row = report->report.rows[index];
  out->model = row.model.c_str();
  out->alpha = row.alpha;
  out->estimator = row.estimator.c_str();
  out->params = row.params.c_str();
  out->reps = row.reps;
  out->failed = row.failed;
  out->mean = row.mean;
  out->mse = row.mse;
  return TF_OK;
}

tf_status tf_report_csv(const tf_report* report, char** out) {
  if (tf_status status = require(report, "report"); status != TF_OK)
    return status;
  if (tf_status status = require(out, "out"); status != TF_OK) return status;
  return guarded([&] {
    const std::string csv = tailfit::report_to_csv(report->report);
    char* buffer = new char[csv.size() + 1];
    std::memcpy(buffer, csv.c_str(), csv.size() + 1);
    *out = buffer;
  });
}

void tf_string_free(char* text) { delete[] text; }

}  // extern "C"
