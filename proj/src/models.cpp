#include "tailfit/models.hpp"

#include <cmath>
#include <numbers>

namespace tailfit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_open_unit(double s, const char* who) {
  if (!(s > 0.0 && s < 1.0))
    throw DomainError(std::string(who) + ": s must lie in (0,1), got " +
                      std::to_string(s));
}

}  // namespace

double tail_alpha(const TailModel& model) {
  return std::visit([](const auto& m) { return m.alpha; }, model);
}

std::string model_name(const TailModel& model) {
  struct Visitor {
    std::string operator()(const StrictPareto&) const { return "pareto"; }
    std::string operator()(const Hall&) const { return "hall"; }
    std::string operator()(const TrigSeries&) const { return "trig"; }
  };
  return std::visit(Visitor{}, model);
}

void validate(const TailModel& model) {
  if (!(tail_alpha(model) > 0.0)) throw DomainError("model: alpha must be > 0");
  if (const auto* hall = std::get_if<Hall>(&model)) {
    if (!(hall->d1 > 0.0)) throw DomainError("hall model: d1 must be > 0");
    if (!(hall->beta > 0.0)) throw DomainError("hall model: beta must be > 0");
  } else if (const auto* trig = std::get_if<TrigSeries>(&model)) {
    if (trig->theta.empty())
      throw DomainError("trig model: theta must have length >= 1");
  }
}

double upper_quantile(const TailModel& model, double s) {
  check_open_unit(s, "upper_quantile");
  struct Visitor {
    double s;
    double operator()(const StrictPareto& m) const {
      return std::pow(s, -m.alpha);
    }
    double operator()(const Hall& m) const {
      return m.d1 * std::pow(s, -m.alpha) * (1.0 + m.d2 * std::pow(s, m.beta));
    }
    double operator()(const TrigSeries& m) const {
      double exponent = -m.alpha * std::log(s) + m.theta[0];
      for (std::size_t k = 1; k < m.theta.size(); ++k)
        exponent += 2.0 * m.theta[k] * std::cos(kTwoPi * k * s);
      return std::exp(exponent);
    }
  };
  return std::visit(Visitor{s}, model);
}

double density_quantile(const TailModel& model, double s) {
  check_open_unit(s, "density_quantile");
  struct Visitor {
    double s;
    double operator()(const StrictPareto& m) const {
      return std::pow(s, m.alpha + 1.0) / m.alpha;
    }
    double operator()(const Hall& m) const {
      const double sb = std::pow(s, m.beta);
      const double slope = m.d1 * std::pow(s, -m.alpha - 1.0) *
                           (-m.alpha * (1.0 + m.d2 * sb) + m.d2 * m.beta * sb);
      return -1.0 / slope;
    }
    double operator()(const TrigSeries& m) const {
      // d/ds Q(1-s) = Q(1-s) * g'(s) with g the log-quantile.
      double exponent = -m.alpha * std::log(s) + m.theta[0];
      double dg = -m.alpha / s;
      for (std::size_t k = 1; k < m.theta.size(); ++k) {
        exponent += 2.0 * m.theta[k] * std::cos(kTwoPi * k * s);
        dg -= 2.0 * kTwoPi * k * m.theta[k] * std::sin(kTwoPi * k * s);
      }
      return -1.0 / (std::exp(exponent) * dg);
    }
  };
  const double fq = std::visit(Visitor{s}, model);
  if (!(fq > 0.0) || !std::isfinite(fq))
    throw NumericError("density_quantile: quantile slope is degenerate at s=" +
                       std::to_string(s));
  return fq;
}

OrderedSample OrderedSample::from_sorted(std::vector<double> values) {
  if (!std::is_sorted(values.begin(), values.end()))
    throw DomainError("OrderedSample: values are not sorted ascending");
  return OrderedSample(std::move(values));
}

OrderedSample OrderedSample::from_unsorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return OrderedSample(std::move(values));
}

}  // namespace tailfit
