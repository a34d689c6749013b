#include "tailfit/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "tailfit/errors.hpp"

namespace tailfit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Regressor g_i(u); column order matches the design matrix.
double regressor(int i, double u) {
  if (i == 0) return -std::log(u);
  if (i == 1) return 1.0;
  return 2.0 * std::cos(kTwoPi * (i - 1) * u);
}

}  // namespace

Matrix limit_matrix(const RegressionConfig& config, int panels) {
  validate(config);
  const std::size_t d = static_cast<std::size_t>(config.p_tilde) + 2;
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const double value = quad_1d(
          [&](double u) {
            return regressor(static_cast<int>(i), u) *
                   regressor(static_cast<int>(j), u) *
                   weight_at(config.weight, u);
          },
          config.a, config.b, panels);
      m(i, j) = value;
      m(j, i) = value;
    }
  }
  return m;
}

double GrFunction::operator()(double u) const {
  double sum = v[0] * (-std::log(u)) + v[1];
  for (int k = 1; k <= config.p_tilde; ++k)
    sum += 2.0 * v[static_cast<std::size_t>(k) + 1] * std::cos(kTwoPi * k * u);
  return weight_at(config.weight, u) * sum;
}

GrFunction g_r_coefficients(const RegressionConfig& config, int panels) {
  SymmetricSystem sys;
  sys.a = limit_matrix(config, panels);
  sys.rhs.assign(sys.a.rows, 0.0);
  sys.rhs[0] = 1.0;
  SymmetricSolution solution;
  try {
    solution = solve_symmetric(sys);
  } catch (const IllConditionedError& err) {
    throw IllConditionedError(std::string("limit matrix is not invertible: ") +
                              err.what());
  }
  if (!solution.positive_definite)
    throw IllConditionedError(
        "limit matrix is not positive definite for this configuration");
  return GrFunction{config, std::move(solution.x)};
}

double asymptotic_variance(const TailModel& model,
                           const RegressionConfig& config, int panels) {
  validate(model);
  const GrFunction gr = g_r_coefficients(config, panels);
  const auto kernel = [&](double s, double t) {
    const double cov = std::min(1.0 - s, 1.0 - t) - (1.0 - s) * (1.0 - t);
    const double qs = upper_quantile(model, s) * density_quantile(model, s);
    const double qt = upper_quantile(model, t) * density_quantile(model, t);
    return gr(s) * gr(t) * cov / (qs * qt);
  };
  return quad_2d_triangle_symmetric(kernel, config.a, config.b, panels);
}

AsymptoticSpec make_asymptotic_spec(const RegressionConfig& config,
                                    const TailModel* model, int panels) {
  AsymptoticSpec spec;
  spec.m_matrix = limit_matrix(config, panels);
  spec.v_row = g_r_coefficients(config, panels).v;
  if (model != nullptr)
    spec.variance = asymptotic_variance(*model, config, panels);
  return spec;
}

}  // namespace tailfit
