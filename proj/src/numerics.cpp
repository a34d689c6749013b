#include "tailfit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "tailfit/errors.hpp"

namespace tailfit {

namespace {

// 8-point Gauss-Legendre rule on [-1,1].
constexpr int kNodes = 8;
constexpr double kGlNode[kNodes] = {
    -0.960289856497536231683560868569, -0.796666477413626739591553936476,
    -0.525532409916328985817739049189, -0.183434642495649804939476142360,
    0.183434642495649804939476142360,  0.525532409916328985817739049189,
    0.796666477413626739591553936476,  0.960289856497536231683560868569};
constexpr double kGlWeight[kNodes] = {
    0.101228536290376259152531354310, 0.222381034453374470544355994426,
    0.313706645877887287337962201987, 0.362683783378361982965150449277,
    0.362683783378361982965150449277, 0.313706645877887287337962201987,
    0.222381034453374470544355994426, 0.101228536290376259152531354310};

void check_symmetric(const Matrix& a) {
  if (a.rows != a.cols) throw DomainError("solve_symmetric: matrix not square");
  if (a.rows == 0) throw DomainError("solve_symmetric: empty system");
  if (a.rows > kMaxSymmetricDim)
    throw DomainError("solve_symmetric: dimension exceeds " +
                      std::to_string(kMaxSymmetricDim));
  double scale = 0.0;
  for (double v : a.data) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, scale))
        throw DomainError("solve_symmetric: matrix not symmetric");
}

}  // namespace

SymmetricSolution solve_symmetric(const SymmetricSystem& sys) {
  check_symmetric(sys.a);
  const std::size_t d = sys.a.rows;
  if (sys.rhs.size() != d)
    throw DomainError("solve_symmetric: rhs length mismatch");

  // P'AP = LDL'; perm[k] is the original index handled at step k.
  Matrix a = sys.a;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> diag(d, 0.0);

  for (std::size_t k = 0; k < d; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < d; ++i)
      if (std::abs(a(i, i)) > std::abs(a(p, p))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a(k, j), a(p, j));
      for (std::size_t i = 0; i < d; ++i) std::swap(a(i, k), a(i, p));
      std::swap(perm[k], perm[p]);
    }
    const double pivot = a(k, k);
    if (pivot == 0.0)
      throw IllConditionedError("solve_symmetric: zero pivot at step " +
                                std::to_string(k));
    diag[k] = pivot;
    for (std::size_t i = k + 1; i < d; ++i) {
      const double l = a(i, k) / pivot;
      for (std::size_t j = k + 1; j <= i; ++j) a(i, j) -= l * a(k, j);
      a(i, k) = l;
    }
    // keep the mirrored upper triangle usable for the next pivot search
    for (std::size_t i = k + 1; i < d; ++i)
      for (std::size_t j = k + 1; j < i; ++j) a(j, i) = a(i, j);
  }

  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  bool pd = true;
  for (double v : diag) {
    dmax = std::max(dmax, std::abs(v));
    dmin = std::min(dmin, std::abs(v));
    if (v <= 0.0) pd = false;
  }
  const double condition = dmax / dmin;
  if (!(condition < kConditionLimit))
    throw IllConditionedError(
        "solve_symmetric: condition estimate " + std::to_string(condition) +
        " exceeds " + std::to_string(kConditionLimit));

  // Solve L z = P'rhs, D w = z, L' y = w, x = P y.
  std::vector<double> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    double s = sys.rhs[perm[k]];
    for (std::size_t j = 0; j < k; ++j) s -= a(k, j) * z[j];
    z[k] = s;
  }
  for (std::size_t k = 0; k < d; ++k) z[k] /= diag[k];
  for (std::size_t k = d; k-- > 0;) {
    double s = z[k];
    for (std::size_t i = k + 1; i < d; ++i) s -= a(i, k) * z[i];
    z[k] = s;
  }
  SymmetricSolution out;
  out.x.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) out.x[perm[k]] = z[k];
  out.condition_estimate = condition;
  out.positive_definite = pd;
  return out;
}

double quad_1d(const std::function<double(double)>& f, double a, double b,
               int panels) {
  if (!(a < b)) throw DomainError("quad_1d: requires a < b");
  if (panels < 1) throw DomainError("quad_1d: requires panels >= 1");
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int q = 0; q < kNodes; ++q)
      acc += kGlWeight[q] * f(mid + 0.5 * h * kGlNode[q]);
    total += 0.5 * h * acc;
  }
  return total;
}

double quad_2d_triangle_symmetric(
    const std::function<double(double, double)>& kernel, double a, double b,
    int panels) {
  if (!(a < b)) throw DomainError("quad_2d_triangle_symmetric: requires a < b");
  if (panels < 1)
    throw DomainError("quad_2d_triangle_symmetric: requires panels >= 1");
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int q = 0; q < kNodes; ++q) {
      const double t = mid + 0.5 * h * kGlNode[q];
      const double inner =
          quad_1d([&](double s) { return kernel(s, t); }, a, t, panels);
      total += 0.5 * h * kGlWeight[q] * inner;
    }
  }
  return 2.0 * total;
}

}  // namespace tailfit
