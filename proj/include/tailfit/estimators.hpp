#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "tailfit/models.hpp"
#include "tailfit/numerics.hpp"

namespace tailfit {

struct Uniform {};

// R(s) = c * s^k
struct Power {
  double c;
  double k;
};

using WeightSpec = std::variant<Uniform, Power>;

double weight_at(const WeightSpec& weight, double s);
// "uniform" or "pow:<c>:<k>" (colon-separated so the value is CSV-safe).
std::string weight_string(const WeightSpec& weight);
// Accepts "uniform" or "pow:<c>,<k>" / "pow:<c>:<k>".
WeightSpec parse_weight(const std::string& text);

// Percentile window [a,b], expansion order, and weight of the regression.
struct RegressionConfig {
  double a = 0.0;
  double b = 0.0;
  int p_tilde = 1;
  WeightSpec weight = Uniform{};
};

// Throws ConfigError unless 0 < a < b < 1, p_tilde >= 1 and the weight is
// admissible (c > 0, k >= 0).
void validate(const RegressionConfig& config);

// Rows j = j_lo..j_hi of the regression of log empirical quantiles on
// (-log s_j, 1, 2cos(2*pi*s_j), ..., 2cos(2*pi*p_tilde*s_j)).
struct DesignSystem {
  long j_lo = 0;
  long j_hi = 0;
  std::size_t n = 0;  // sample size the percentile grid was built for
  int p_tilde = 0;
  std::vector<double> s;  // s_j = j/n
  std::vector<double> y;  // log Q_n(1 - s_j); empty until attach_response
  Matrix x;               // m x (p_tilde + 2)
  std::vector<double> w;  // R(s_j)

  std::size_t row_count() const { return s.size(); }
  bool has_response() const { return !y.empty(); }
};

struct FitResult {
  double alpha_hat = 0.0;
  std::vector<double> theta_hat;  // theta_0 .. theta_p_tilde
  double condition_estimate = 1.0;
};

// Hill estimator over the top k order statistics.
double hill(const OrderedSample& sample, std::size_t k);

// Pickands estimator from spacings at levels k, 2k, 4k.
double pickands(const OrderedSample& sample, std::size_t k);

// Dekkers-Einmahl-de Haan moment estimator.
double dedh(const OrderedSample& sample, std::size_t k);

// Grid, regressors and weights; the response is attached separately.
// Index bounds are ceil(n*a) and floor(n*b); s_j is computed fresh as j/n.
DesignSystem build_design(std::size_t n, const RegressionConfig& config);

// Fills y_j = log X_{n-j,n}. Throws NumericError naming the offending index
// if an order statistic in the window is nonpositive.
DesignSystem attach_response(DesignSystem design, const OrderedSample& sample);

// Weighted least squares through the (p_tilde+2) x (p_tilde+2) normal
// equations; throws IllConditionedError when the system is singular or its
// condition estimate exceeds kConditionLimit.
FitResult wls_fit(const DesignSystem& design);

}  // namespace tailfit
