#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tailfit/errors.hpp"

namespace tailfit {

// Q(1-s) = s^-alpha
struct StrictPareto {
  double alpha;
};

// Q(1-s) = d1 * s^-alpha * (1 + d2 * s^beta)
struct Hall {
  double alpha;
  double d1;
  double d2;
  double beta;
};

// Q(1-s) = exp(-alpha*log s + theta_0 + 2*sum_k theta_k*cos(2*pi*k*s)),
// theta = (theta_0, ..., theta_p).
struct TrigSeries {
  double alpha;
  std::vector<double> theta;
};

using TailModel = std::variant<StrictPareto, Hall, TrigSeries>;

double tail_alpha(const TailModel& model);
std::string model_name(const TailModel& model);

// Throws DomainError unless alpha > 0, d1 > 0, beta > 0, theta nonempty.
void validate(const TailModel& model);

// Q(1-s) for s in (0,1).
double upper_quantile(const TailModel& model, double s);

// fQ(1-s) = -1 / (d/ds Q(1-s)); throws NumericError when the derivative
// vanishes or has the wrong sign.
double density_quantile(const TailModel& model, double s);

// A sample sorted ascending; the only estimator input.
class OrderedSample {
 public:
  OrderedSample() = default;

  // Verifies the values are nondecreasing.
  static OrderedSample from_sorted(std::vector<double> values);
  // Sorts a copy of arbitrary data.
  static OrderedSample from_unsorted(std::vector<double> values);

  std::size_t n() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  // X_{k,n}, 1-based.
  double order_stat(std::size_t k) const { return values_[k - 1]; }

 private:
  explicit OrderedSample(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

// Inverse-transform sampling: X = Q(1-U) with U uniform on (0,1).
// `rng()` must yield uniforms in the open interval; the result is
// deterministic for a given generator state.
template <class Rng>
OrderedSample sample(const TailModel& model, std::size_t n, Rng&& rng) {
  validate(model);
  if (n < 1) throw DomainError("sample: n must be >= 1");
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = upper_quantile(model, rng());
  return OrderedSample::from_unsorted(std::move(values));
}

}  // namespace tailfit
