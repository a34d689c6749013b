#include "tailfit/estimators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tailfit/csv.hpp"
#include "tailfit/errors.hpp"

namespace tailfit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Order statistic X_{n-k,n} used as the baseline of log-excess sums.
double log_baseline(const OrderedSample& sample, std::size_t k, const char* who) {
  const std::size_t n = sample.n();
  if (k < 1 || k >= n)
    throw DomainError(std::string(who) + ": requires 1 <= k < n");
  const double base = sample.order_stat(n - k);
  if (!(base > 0.0))
    throw NumericError(std::string(who) + ": order statistic X_{" +
                       std::to_string(n - k) + "," + std::to_string(n) +
                       "} is not positive");
  return std::log(base);
}

}  // namespace

double weight_at(const WeightSpec& weight, double s) {
  if (const auto* power = std::get_if<Power>(&weight))
    return power->c * std::pow(s, power->k);
  return 1.0;
}

std::string weight_string(const WeightSpec& weight) {
  if (const auto* power = std::get_if<Power>(&weight))
    return "pow:" + format_double(power->c) + ":" + format_double(power->k);
  return "uniform";
}

WeightSpec parse_weight(const std::string& text) {
  if (text == "uniform") return Uniform{};
  if (text.rfind("pow:", 0) == 0) {
    std::string body = text.substr(4);
    const auto sep = body.find_first_of(",:");
    if (sep != std::string::npos) {
      try {
        const double c = std::stod(body.substr(0, sep));
        const double k = std::stod(body.substr(sep + 1));
        return Power{c, k};
      } catch (const std::exception&) {
      }
    }
  }
  throw ConfigError("weight: expected 'uniform' or 'pow:<c>,<k>', got '" +
                    text + "'");
}

void validate(const RegressionConfig& config) {
  if (!(0.0 < config.a && config.a < config.b && config.b < 1.0))
    throw ConfigError("regression config: requires 0 < a < b < 1");
  if (config.p_tilde < 1)
    throw ConfigError("regression config: requires p_tilde >= 1");
  if (const auto* power = std::get_if<Power>(&config.weight)) {
    if (!(power->c > 0.0))
      throw ConfigError("weight: requires c > 0");
    if (!(power->k >= 0.0))
      throw ConfigError("weight: requires k >= 0");
  }
}

double hill(const OrderedSample& sample, std::size_t k) {
  const double log_base = log_baseline(sample, k, "hill");
  const std::size_t n = sample.n();
  long double acc = 0.0L;
  for (std::size_t j = 1; j <= k; ++j)
    acc += static_cast<long double>(std::log(sample.order_stat(n - j + 1))) -
           log_base;
  return static_cast<double>(acc / static_cast<long double>(k));
}

double pickands(const OrderedSample& sample, std::size_t k) {
  const std::size_t n = sample.n();
  if (k < 1 || 4 * k > n) throw DomainError("pickands: requires 4k <= n");
  const double q1 = sample.order_stat(n - k + 1);
  const double q2 = sample.order_stat(n - 2 * k + 1);
  const double q4 = sample.order_stat(n - 4 * k + 1);
  const double num = q1 - q2;
  const double den = q2 - q4;
  if (den == 0.0)
    throw NumericError("pickands: spacing X_{n-2k+1,n} - X_{n-4k+1,n} is zero");
  const double ratio = num / den;
  if (!(ratio > 0.0))
    throw NumericError("pickands: spacing ratio is not positive");
  return std::log(ratio) / std::numbers::ln2;
}

double dedh(const OrderedSample& sample, std::size_t k) {
  const double log_base = log_baseline(sample, k, "dedh");
  const std::size_t n = sample.n();
  long double m1 = 0.0L, m2 = 0.0L;
  for (std::size_t j = 1; j <= k; ++j) {
    const long double excess =
        static_cast<long double>(std::log(sample.order_stat(n - j + 1))) -
        log_base;
    m1 += excess;
    m2 += excess * excess;
  }
  m1 /= static_cast<long double>(k);
  m2 /= static_cast<long double>(k);
  if (m2 == 0.0L)
    throw NumericError("dedh: top order statistics are all equal");
  const long double denom = 1.0L - (m1 * m1) / m2;
  if (denom == 0.0L)
    throw NumericError("dedh: moment ratio M1^2/M2 equals 1");
  return static_cast<double>(m1 + 1.0L - 0.5L / denom);
}

DesignSystem build_design(std::size_t n, const RegressionConfig& config) {
  validate(config);
  if (n < 1) throw ConfigError("build_design: requires n >= 1");
  const long j_lo =
      static_cast<long>(std::ceil(static_cast<double>(n) * config.a));
  const long j_hi =
      static_cast<long>(std::floor(static_cast<double>(n) * config.b));
  const long cols = static_cast<long>(config.p_tilde) + 2;
  if (j_hi - j_lo + 1 < cols)
    throw ConfigError("build_design: percentile grid [" + std::to_string(j_lo) +
                      "," + std::to_string(j_hi) + "] has fewer than " +
                      std::to_string(cols) + " rows");

  DesignSystem design;
  design.j_lo = j_lo;
  design.j_hi = j_hi;
  design.n = n;
  design.p_tilde = config.p_tilde;
  const std::size_t m = static_cast<std::size_t>(j_hi - j_lo + 1);
  design.s.resize(m);
  design.w.resize(m);
  design.x = Matrix(m, static_cast<std::size_t>(cols));
  for (std::size_t r = 0; r < m; ++r) {
    const long j = j_lo + static_cast<long>(r);
    const double s = static_cast<double>(j) / static_cast<double>(n);
    design.s[r] = s;
    design.w[r] = weight_at(config.weight, s);
    design.x(r, 0) = -std::log(s);
    design.x(r, 1) = 1.0;
    for (int k = 1; k <= config.p_tilde; ++k)
      design.x(r, static_cast<std::size_t>(k) + 1) = 2.0 * std::cos(kTwoPi * k * s);
  }
  return design;
}

DesignSystem attach_response(DesignSystem design, const OrderedSample& sample) {
  if (sample.n() != design.n)
    throw ConfigError("attach_response: sample size " +
                      std::to_string(sample.n()) +
                      " does not match design size " + std::to_string(design.n));
  const std::size_t m = design.row_count();
  design.y.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    // Q_n(1 - j/n) = X_{n-j,n} exactly.
    const std::size_t k = design.n - static_cast<std::size_t>(design.j_lo + static_cast<long>(r));
    const double value = sample.order_stat(k);
    if (!(value > 0.0))
      throw NumericError("attach_response: order statistic X_{" +
                         std::to_string(k) + "," + std::to_string(design.n) +
                         "} is not positive");
    design.y[r] = std::log(value);
  }
  return design;
}

FitResult wls_fit(const DesignSystem& design) {
  if (!design.has_response())
    throw ConfigError("wls_fit: design has no response attached");
  const std::size_t m = design.row_count();
  const std::size_t d = design.x.cols;
  std::size_t positive = 0;
  for (double w : design.w)
    if (w > 0.0) ++positive;
  if (positive < d)
    throw ConfigError("wls_fit: fewer than " + std::to_string(d) +
                      " rows with positive weight");

  // Normal equations X'WX beta = X'Wy, accumulated in extended precision.
  std::vector<long double> normal(d * d, 0.0L), rhs(d, 0.0L);
  for (std::size_t r = 0; r < m; ++r) {
    const long double w = design.w[r];
    if (w == 0.0L) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const long double wxi = w * static_cast<long double>(design.x(r, i));
      rhs[i] += wxi * static_cast<long double>(design.y[r]);
      for (std::size_t j = i; j < d; ++j)
        normal[i * d + j] += wxi * static_cast<long double>(design.x(r, j));
    }
  }
  SymmetricSystem sys;
  sys.a = Matrix(d, d);
  sys.rhs.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    sys.rhs[i] = static_cast<double>(rhs[i]);
    for (std::size_t j = i; j < d; ++j) {
      const double v = static_cast<double>(normal[i * d + j]);
      sys.a(i, j) = v;
      sys.a(j, i) = v;
    }
  }
  const SymmetricSolution solution = solve_symmetric(sys);

  FitResult fit;
  fit.alpha_hat = solution.x[0];
  fit.theta_hat.assign(solution.x.begin() + 1, solution.x.end());
  fit.condition_estimate = solution.condition_estimate;
  return fit;
}

}  // namespace tailfit
