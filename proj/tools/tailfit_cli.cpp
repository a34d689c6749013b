// Command-line frontend of the tailfit shared library. Talks to the library
// exclusively through the C interface in tailfit.h.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailfit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;

struct ModelDeleter {
  void operator()(tf_model* m) const { tf_model_free(m); }
};
struct SampleDeleter {
  void operator()(tf_sample* s) const { tf_sample_free(s); }
};
struct PlanDeleter {
  void operator()(tf_sim_plan* p) const { tf_plan_free(p); }
};
struct ReportDeleter {
  void operator()(tf_report* r) const { tf_report_free(r); }
};

using ModelPtr = std::unique_ptr<tf_model, ModelDeleter>;
using SamplePtr = std::unique_ptr<tf_sample, SampleDeleter>;
using PlanPtr = std::unique_ptr<tf_sim_plan, PlanDeleter>;
using ReportPtr = std::unique_ptr<tf_report, ReportDeleter>;

int status_to_exit(tf_status status) {
  switch (status) {
    case TF_OK: return kExitOk;
    case TF_ERR_NUMERIC:
    case TF_ERR_ILL_CONDITIONED: return kExitNumeric;
    default: return kExitUsage;
  }
}

// Fails the command with the library's error message.
int report_failure(const char* what, tf_status status) {
  std::cerr << "tailfit: " << what << ": " << tf_last_error() << "\n";
  return status_to_exit(status);
}

std::string format_value(double value) {
  char buffer[64];
  const std::to_chars_result result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

// One decimal real per line; '#' starts a comment line.
bool read_value_file(const std::string& path, std::vector<double>& values,
                     std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open '" + path + "'";
    return false;
  }
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t\r") + 1;
    double value = 0.0;
    const auto result =
        std::from_chars(line.data() + begin, line.data() + end, value);
    if (result.ec != std::errc{} || result.ptr != line.data() + end) {
      error = path + ":" + std::to_string(line_no) + ": not a decimal real";
      return false;
    }
    values.push_back(value);
  }
  if (in.bad()) {
    error = "read error on '" + path + "'";
    return false;
  }
  if (values.empty()) {
    error = path + ": no data values";
    return false;
  }
  return true;
}

// "uniform" or "pow:<c>,<k>" (also accepts a ':' separator).
bool parse_weight_flag(const std::string& text, tf_regression_config& config,
                       std::string& error) {
  if (text == "uniform") {
    config.weight = TF_WEIGHT_UNIFORM;
    return true;
  }
  if (text.rfind("pow:", 0) == 0) {
    const std::string body = text.substr(4);
    const std::size_t sep = body.find_first_of(",:");
    if (sep != std::string::npos) {
      try {
        config.weight = TF_WEIGHT_POWER;
        config.weight_c = std::stod(body.substr(0, sep));
        config.weight_k = std::stod(body.substr(sep + 1));
        return true;
      } catch (const std::exception&) {
      }
    }
  }
  error = "expected 'uniform' or 'pow:<c>,<k>', got '" + text + "'";
  return false;
}

std::string weight_flag_string(const tf_regression_config& config) {
  if (config.weight == TF_WEIGHT_POWER)
    return "pow:" + format_value(config.weight_c) + ":" +
           format_value(config.weight_k);
  return "uniform";
}

bool write_output(const std::string& path, const std::string& payload,
                  std::string& error) {
  if (path == "-") {
    std::cout << payload;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    error = "cannot open '" + path + "' for writing";
    return false;
  }
  out << payload;
  if (!out) {
    error = "write error on '" + path + "'";
    return false;
  }
  return true;
}

struct EstimateOptions {
  std::string input;
  std::string method;
  std::size_t k = 0;
  tf_regression_config config{0.001, 0.4, 1, TF_WEIGHT_POWER, 0.002, 1.0};
  std::string weight_text;
};

int run_estimate(const EstimateOptions& options) {
  std::vector<double> values;
  std::string error;
  if (!read_value_file(options.input, values, error)) {
    std::cerr << "tailfit: estimate: " << error << "\n";
    return kExitIo;
  }

  tf_sample* raw_sample = nullptr;
  tf_status status = tf_sample_from_data(values.data(), values.size(), &raw_sample);
  if (status != TF_OK) return report_failure("estimate", status);
  SamplePtr sample(raw_sample);

  const std::size_t n = tf_sample_size(sample.get());
  if (options.method == "hill" || options.method == "pickands" ||
      options.method == "dedh") {
    double alpha = 0.0;
    if (options.method == "hill")
      status = tf_hill(sample.get(), options.k, &alpha);
    else if (options.method == "pickands")
      status = tf_pickands(sample.get(), options.k, &alpha);
    else
      status = tf_dedh(sample.get(), options.k, &alpha);
    if (status != TF_OK) return report_failure("estimate", status);
    std::cout << "method,n,alpha_hat,k\n"
              << options.method << "," << n << "," << format_value(alpha) << ","
              << options.k << "\n";
    return kExitOk;
  }

  tf_regression_config config = options.config;
  if (options.method == "ols") config.weight = TF_WEIGHT_UNIFORM;
  std::vector<double> theta(static_cast<std::size_t>(config.ptilde) + 1, 0.0);
  double alpha = 0.0;
  status = tf_wls_fit(sample.get(), &config, &alpha, theta.data(), nullptr);
  if (status != TF_OK) return report_failure("estimate", status);
  std::cout << "method,n,alpha_hat";
  for (int i = 0; i <= config.ptilde; ++i) std::cout << ",theta_" << i;
  std::cout << "\n" << options.method << "," << n << "," << format_value(alpha);
  for (double t : theta) std::cout << "," << format_value(t);
  std::cout << "\n";
  return kExitOk;
}

struct SimulateOptions {
  std::string model = "pareto";
  double d1 = 0.4, d2 = 1.0, beta = 0.01;
  std::vector<double> alphas;
  std::size_t n = 5000;
  std::size_t reps = 1000;
  std::vector<std::string> estimators;
  tf_regression_config config{0.001, 0.4, 1, TF_WEIGHT_POWER, 0.002, 1.0};
  std::string weight_text;
  std::uint64_t seed = 0;
  std::string out = "-";
};

// "wls:ptilde=2", "ols:ptilde=1", "hill:k=200", ...
bool add_estimator(tf_sim_plan* plan, const std::string& token,
                   const tf_regression_config& base, std::string& error) {
  const std::size_t colon = token.find(':');
  const std::string name = token.substr(0, colon);
  std::string params =
      colon == std::string::npos ? std::string() : token.substr(colon + 1);

  const auto parse_param = [&](const char* key,
                               long long& value) -> bool {
    const std::string prefix = std::string(key) + "=";
    if (params.rfind(prefix, 0) != 0) return false;
    try {
      value = std::stoll(params.substr(prefix.size()));
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };

  tf_status status = TF_OK;
  if (name == "wls" || name == "ols") {
    long long ptilde = base.ptilde;
    if (!params.empty() && !parse_param("ptilde", ptilde)) {
      error = "estimator '" + token + "': expected ptilde=<int>";
      return false;
    }
    tf_regression_config config = base;
    config.ptilde = static_cast<int>(ptilde);
    if (name == "ols") config.weight = TF_WEIGHT_UNIFORM;
    status = tf_plan_add_wls(plan, name.c_str(), &config);
  } else if (name == "hill" || name == "pickands" || name == "dedh") {
    long long k = 0;
    if (!parse_param("k", k) || k < 1) {
      error = "estimator '" + token + "': expected k=<positive int>";
      return false;
    }
    if (name == "hill")
      status = tf_plan_add_hill(plan, static_cast<std::size_t>(k));
    else if (name == "pickands")
      status = tf_plan_add_pickands(plan, static_cast<std::size_t>(k));
    else
      status = tf_plan_add_dedh(plan, static_cast<std::size_t>(k));
  } else {
    error = "unknown estimator '" + name + "'";
    return false;
  }
  if (status != TF_OK) {
    error = tf_last_error();
    return false;
  }
  return true;
}

int run_simulate(const SimulateOptions& options) {
  tf_sim_plan* raw_plan = nullptr;
  tf_status status = tf_plan_new(options.alphas.data(), options.alphas.size(),
                                 options.n, options.reps, options.seed, &raw_plan);
  if (status != TF_OK) return report_failure("simulate", status);
  PlanPtr plan(raw_plan);

  if (options.model == "hall") {
    status = tf_plan_set_hall(plan.get(), options.d1, options.d2, options.beta);
    if (status != TF_OK) return report_failure("simulate", status);
  } else if (options.model != "pareto") {
    std::cerr << "tailfit: simulate: unknown model '" << options.model << "'\n";
    return kExitUsage;
  }

  for (const std::string& token : options.estimators) {
    std::string error;
    if (!add_estimator(plan.get(), token, options.config, error)) {
      std::cerr << "tailfit: simulate: " << error << "\n";
      return kExitUsage;
    }
  }

  tf_report* raw_report = nullptr;
  status = tf_plan_run(plan.get(), &raw_report);
  if (status != TF_OK) return report_failure("simulate", status);
  ReportPtr report(raw_report);

  char* csv = nullptr;
  status = tf_report_csv(report.get(), &csv);
  if (status != TF_OK) return report_failure("simulate", status);
  std::string payload(csv);
  tf_string_free(csv);

  std::string error;
  if (!write_output(options.out, payload, error)) {
    std::cerr << "tailfit: simulate: " << error << "\n";
    return kExitIo;
  }
  return kExitOk;
}

struct VarianceOptions {
  std::string model = "pareto";
  double alpha = 1.0;
  double d1 = 0.4, d2 = 1.0, beta = 0.01;
  tf_regression_config config{0.001, 0.4, 1, TF_WEIGHT_POWER, 0.002, 1.0};
  std::string weight_text;
  int panels = 0;
};

int run_variance(const VarianceOptions& options) {
  tf_model* raw_model = nullptr;
  tf_status status;
  if (options.model == "pareto") {
    status = tf_model_pareto(options.alpha, &raw_model);
  } else if (options.model == "hall") {
    status = tf_model_hall(options.alpha, options.d1, options.d2, options.beta,
                           &raw_model);
  } else {
    std::cerr << "tailfit: variance: unknown model '" << options.model << "'\n";
    return kExitUsage;
  }
  if (status != TF_OK) return report_failure("variance", status);
  ModelPtr model(raw_model);

  double variance = 0.0;
  status = tf_asymptotic_variance(model.get(), &options.config, options.panels,
                                  &variance);
  if (status != TF_OK) return report_failure("variance", status);

  std::cout << "model,alpha,a,b,ptilde,weight,V,V_over_alpha_sq\n"
            << options.model << "," << format_value(options.alpha) << ","
            << format_value(options.config.a) << ","
            << format_value(options.config.b) << "," << options.config.ptilde
            << "," << weight_flag_string(options.config) << ","
            << format_value(variance) << ","
            << format_value(variance / (options.alpha * options.alpha)) << "\n";
  return kExitOk;
}

void add_window_flags(CLI::App* cmd, tf_regression_config& config,
                      std::string& weight_text) {
  cmd->add_option("--a", config.a, "Lower percentile bound")
      ->capture_default_str();
  cmd->add_option("--b", config.b, "Upper percentile bound")
      ->capture_default_str();
  cmd->add_option("--ptilde", config.ptilde, "Cosine expansion order")
      ->capture_default_str();
  cmd->add_option("--weight", weight_text,
                  "Weight function: uniform or pow:<c>,<k> for R(s)=c*s^k")
      ->default_str("pow:0.002,1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail index estimation toolkit"};
  app.require_subcommand(1);

  EstimateOptions estimate;
  CLI::App* estimate_cmd = app.add_subcommand(
      "estimate", "Estimate the tail index from a data file");
  estimate_cmd->add_option("--input", estimate.input, "Newline-delimited reals")
      ->required();
  estimate_cmd
      ->add_option("--method", estimate.method,
                   "One of wls, ols, hill, pickands, dedh")
      ->required()
      ->check(CLI::IsMember({"wls", "ols", "hill", "pickands", "dedh"}));
  estimate_cmd->add_option("--k", estimate.k,
                           "Sample fraction for hill/pickands/dedh");
  add_window_flags(estimate_cmd, estimate.config, estimate.weight_text);

  SimulateOptions simulate;
  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo comparison of estimators, CSV out");
  simulate_cmd->add_option("--model", simulate.model, "pareto or hall")
      ->capture_default_str();
  simulate_cmd->add_option("--d1", simulate.d1, "Hall scale")
      ->capture_default_str();
  simulate_cmd->add_option("--d2", simulate.d2, "Hall second-order coefficient")
      ->capture_default_str();
  simulate_cmd->add_option("--beta", simulate.beta, "Hall second-order rate")
      ->capture_default_str();
  simulate_cmd->add_option("--alphas", simulate.alphas, "Tail index grid")
      ->required()
      ->delimiter(',');
  simulate_cmd->add_option("--n", simulate.n, "Sample size")
      ->capture_default_str();
  simulate_cmd->add_option("--reps", simulate.reps, "Replications per cell")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--estimators", simulate.estimators,
                   "Comma-separated list, e.g. wls:ptilde=1,hill:k=200")
      ->required()
      ->delimiter(',');
  simulate_cmd->add_option("--seed", simulate.seed, "Base seed")
      ->capture_default_str();
  simulate_cmd->add_option("--out", simulate.out, "Output path, '-' = stdout")
      ->capture_default_str();
  add_window_flags(simulate_cmd, simulate.config, simulate.weight_text);

  VarianceOptions variance;
  CLI::App* variance_cmd = app.add_subcommand(
      "variance", "Asymptotic variance of the WLS estimator");
  variance_cmd->add_option("--model", variance.model, "pareto or hall")
      ->capture_default_str();
  variance_cmd->add_option("--alpha", variance.alpha, "Tail index")
      ->required();
  variance_cmd->add_option("--d1", variance.d1, "Hall scale")
      ->capture_default_str();
  variance_cmd->add_option("--d2", variance.d2, "Hall second-order coefficient")
      ->capture_default_str();
  variance_cmd->add_option("--beta", variance.beta, "Hall second-order rate")
      ->capture_default_str();
  variance_cmd
      ->add_option("--panels", variance.panels,
                   "Quadrature panels per axis (0 = default)")
      ->capture_default_str();
  add_window_flags(variance_cmd, variance.config, variance.weight_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto apply_weight = [](const std::string& text,
                               tf_regression_config& config) -> bool {
    if (text.empty()) return true;
    std::string error;
    if (!parse_weight_flag(text, config, error)) {
      std::cerr << "tailfit: " << error << "\n";
      return false;
    }
    return true;
  };

  if (estimate_cmd->parsed()) {
    if (!apply_weight(estimate.weight_text, estimate.config)) return kExitUsage;
    if ((estimate.method == "hill" || estimate.method == "pickands" ||
         estimate.method == "dedh") &&
        estimate.k == 0) {
      std::cerr << "tailfit: estimate: --k is required for --method "
                << estimate.method << "\n";
      return kExitUsage;
    }
    return run_estimate(estimate);
  }
  if (simulate_cmd->parsed()) {
    if (!apply_weight(simulate.weight_text, simulate.config)) return kExitUsage;
    return run_simulate(simulate);
  }
  if (!apply_weight(variance.weight_text, variance.config)) return kExitUsage;
  return run_variance(variance);
}
