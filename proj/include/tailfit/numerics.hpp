#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tailfit {

// Dense row-major matrix. Everything in this library is tiny (d <= 64).
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct SymmetricSystem {
  Matrix a;                 // d x d, symmetric
  std::vector<double> rhs;  // length d
};

struct SymmetricSolution {
  std::vector<double> x;
  double condition_estimate = 1.0;  // max|d_i| / min|d_i| over the factor diagonal
  bool positive_definite = false;   // all pivots > 0
};

inline constexpr double kConditionLimit = 1e12;
inline constexpr std::size_t kMaxSymmetricDim = 64;

// Solves a*x = rhs by LDL^T with symmetric diagonal pivoting.
// Throws DomainError if the matrix is not symmetric (1e-12 relative) or larger
// than kMaxSymmetricDim, IllConditionedError on a zero pivot or a condition
// estimate beyond kConditionLimit.
SymmetricSolution solve_symmetric(const SymmetricSystem& sys);

// Composite Gauss-Legendre rule with 8 nodes per panel, exact for
// polynomials up to degree 15 on each panel.
double quad_1d(const std::function<double(double)>& f, double a, double b,
               int panels);

// 2 * integral of a symmetric kernel over the triangle {a <= s < t <= b}.
// The inner integral runs to the moving limit t, so kernels with a crease on
// the diagonal stay smooth over the integration domain.
double quad_2d_triangle_symmetric(
    const std::function<double(double, double)>& kernel, double a, double b,
    int panels);

}  // namespace tailfit
