#pragma once

#include <optional>
#include <vector>

#include "tailfit/estimators.hpp"
#include "tailfit/models.hpp"
#include "tailfit/numerics.hpp"

namespace tailfit {

inline constexpr int kDefaultPanels = 64;

// Limit of n^-1 X'WX: entry (i,j) = integral over [a,b] of
// g_i(u) g_j(u) R(u) du with g = (-log u, 1, 2cos(2*pi*u), ...).
Matrix limit_matrix(const RegressionConfig& config, int panels = kDefaultPanels);

// G_R(u) = R(u) * (-v* log u + v_0 + 2 sum_k v_k cos(2*pi*k*u)) where
// (v*, v_0, ..., v_ptilde) is the first row of the inverse limit matrix.
struct GrFunction {
  RegressionConfig config;
  std::vector<double> v;  // v[0] = v*, v[1] = v_0, v[1+k] = v_k

  double operator()(double u) const;
};

// First row of M(a,b,R)^-1. Throws IllConditionedError when M is not
// numerically positive definite or its condition estimate is too large,
// i.e. the invertibility condition on M fails for this configuration.
GrFunction g_r_coefficients(const RegressionConfig& config,
                            int panels = kDefaultPanels);

// Asymptotic variance of sqrt(n) (alpha_hat - alpha): double integral of
// G_R(s) G_R(t) (min(1-s,1-t) - (1-s)(1-t)) /
// (Q(1-s) Q(1-t) fQ(1-s) fQ(1-t)) over [a,b]^2, split along the diagonal
// where the covariance kernel has a crease.
double asymptotic_variance(const TailModel& model,
                           const RegressionConfig& config,
                           int panels = kDefaultPanels);

struct AsymptoticSpec {
  Matrix m_matrix;
  std::vector<double> v_row;
  std::optional<double> variance;  // set when a model is supplied
};

AsymptoticSpec make_asymptotic_spec(const RegressionConfig& config,
                                    const TailModel* model = nullptr,
                                    int panels = kDefaultPanels);

}  // namespace tailfit
