// Independent reference computations used only by tests. Everything here is
// deliberately naive (cofactor expansions, finite differences, plain Monte
// Carlo) so it shares no code path with the library.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tailfit/models.hpp"
#include "tailfit/rng.hpp"

namespace oracles {

// Determinant by cofactor expansion along the first row, extended precision.
inline long double det_cofactor(const std::vector<long double>& a,
                                std::size_t d) {
  if (d == 1) return a[0];
  long double det = 0.0L;
  std::vector<long double> minor((d - 1) * (d - 1));
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t m = 0;
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (j != col) minor[m++] = a[i * d + j];
    const long double term = a[col] * det_cofactor(minor, d - 1);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

// Solves a*x = rhs via the adjugate formula; d <= 6 keeps the cost sane.
inline std::vector<double> solve_adjugate(const std::vector<double>& a,
                                          const std::vector<double>& rhs) {
  const std::size_t d = rhs.size();
  if (d > 6) throw std::invalid_argument("solve_adjugate: d must be <= 6");
  std::vector<long double> ext(a.begin(), a.end());
  const long double det = det_cofactor(ext, d);
  if (det == 0.0L) throw std::runtime_error("solve_adjugate: singular");
  // Cramer's rule: x_i = det(A with column i replaced by rhs) / det(A).
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<long double> replaced = ext;
    for (std::size_t row = 0; row < d; ++row)
      replaced[row * d + i] = rhs[row];
    x[i] = static_cast<double>(det_cofactor(replaced, d) / det);
  }
  return x;
}

// fQ(1-s) from a central difference of the quantile function.
inline double density_quantile_fd(const tailfit::TailModel& model, double s,
                                  double step = 1e-7) {
  const double hi = tailfit::upper_quantile(model, s + step);
  const double lo = tailfit::upper_quantile(model, s - step);
  return -1.0 / ((hi - lo) / (2.0 * step));
}

// Plain Monte Carlo estimate of an integral over [lo,hi]^2.
inline double mc_integral_2d(const std::function<double(double, double)>& f,
                             double lo, double hi, std::size_t points,
                             std::uint64_t seed) {
  tailfit::SplitMix64 rng(seed);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < points; ++i) {
    const double s = lo + (hi - lo) * rng.next_open01();
    const double t = lo + (hi - lo) * rng.next_open01();
    acc += f(s, t);
  }
  const long double area = (hi - lo) * (hi - lo);
  return static_cast<double>(acc / static_cast<long double>(points) * area);
}

// Two-pass sample variance (divides by m).
inline double variance_two_pass(const std::vector<double>& x) {
  long double mean = 0.0L;
  for (double v : x) mean += v;
  mean /= static_cast<long double>(x.size());
  long double acc = 0.0L;
  for (double v : x) {
    const long double dev = v - mean;
    acc += dev * dev;
  }
  return static_cast<double>(acc / static_cast<long double>(x.size()));
}

// Sample whose relevant order statistics sit exactly on the model quantile
// curve: X_{n-j,n} = Q(1 - j/n) for j = 1..n-1, so a regression response
// built from it carries no noise.
inline tailfit::OrderedSample noiseless_sample(const tailfit::TailModel& model,
                                               std::size_t n) {
  std::vector<double> values(n);
  for (std::size_t k = 1; k < n; ++k) {
    const double s =
        static_cast<double>(n - k) / static_cast<double>(n);
    values[k - 1] = tailfit::upper_quantile(model, s);
  }
  values[n - 1] =
      tailfit::upper_quantile(model, 0.5 / static_cast<double>(n));
  return tailfit::OrderedSample::from_sorted(std::move(values));
}

}  // namespace oracles
