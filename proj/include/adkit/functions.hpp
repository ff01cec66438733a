#ifndef ADKIT_FUNCTIONS_HPP
#define ADKIT_FUNCTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "adkit/errors.hpp"
#include "adkit/matrix.hpp"
#include "adkit/real.hpp"

// Built-in test functions, generic over every scalar type in the kit (plain
// double, Dual, tape Var, counting scalar, tagged nested scalar).

namespace adkit::bench {

// y = ln(x1) + x1*x2 - sin(x2); requires x1 > 0.
template <class S>
S example_f(const S& x1, const S& x2) {
  return ln(x1) + x1 * x2 - sin(x2);
}

// n iterations of the logistic map l <- 4l(1-l), starting from l1 = x.
// Each iteration costs exactly two multiplications and one subtraction.
template <class S>
S logistic_l(int n, const S& x) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("logistic_l: n must be in 1..4");
  S l = x;
  for (int k = 1; k < n; ++k) l = 4.0 * l * (1.0 - l);
  return l;
}

// Hand-optimized closed forms of d l_n / dx.  These are the expression-swell
// reference: exact low-degree polynomials against which AD is checked.
inline double logistic_dl_closed(int n, double x) {
  switch (n) {
    case 1:
      return 1.0;
    case 2:
      return 4.0 - 8.0 * x;
    case 3:
      return 16.0 * (1.0 + x * (-10.0 + x * (24.0 + x * -16.0)));
    case 4:
      return 64.0 *
             (1.0 +
              x * (-42.0 +
                   x * (504.0 +
                        x * (-2640.0 +
                             x * (7040.0 +
                                  x * (-9984.0 + x * (7168.0 + x * -2048.0)))))));
    default:
      throw std::invalid_argument("logistic_dl_closed: n must be in 1..4");
  }
}

// Helmholtz free-energy instance in reduced units (R = T = 1): mixing
// coefficients b and symmetric interaction matrix A.
struct HelmholtzSpec {
  std::size_t n = 0;
  double R = 1.0;
  double T = 1.0;
  std::vector<double> b;  // entries in [0.1, 0.2]/n, strictly positive
  Matrix A;               // n x n, symmetric
};

// Deterministic instance from a seed: b_i uniform in [0.1,0.2]/n, then
// A = 0.5(M + M^T) with M entries uniform in [-0.1,0.1], drawn row-major
// from splitmix64.  Same (n, seed) always gives the same spec.
HelmholtzSpec helmholtz_make(std::size_t n, std::uint64_t seed);

// f(x) = R T sum_i x_i ln(x_i / (1 - b.x))
//        - (x^T A x) / (sqrt(8) b.x) * ln((1 + (1+sqrt 2) b.x) / (1 + (1-sqrt 2) b.x))
// Requires every x_i > 0 and 1 - b.x > 0.
template <class S>
S helmholtz_eval(const HelmholtzSpec& spec, std::span<const S> x) {
  using adkit::primal_value;
  const std::size_t n = spec.n;
  if (n == 0 || x.size() != n)
    throw std::invalid_argument("helmholtz_eval: point arity must equal spec.n");
  for (std::size_t i = 0; i < n; ++i)
    if (!(primal_value(x[i]) > 0.0))
      throw DomainError("helmholtz: all x_i must be strictly positive");

  S bqx = spec.b[0] * x[0];
  for (std::size_t i = 1; i < n; ++i) bqx = bqx + spec.b[i] * x[i];
  if (!(1.0 - primal_value(bqx) > 0.0))
    throw DomainError("helmholtz: 1 - b.x must be strictly positive");

  S denom = 1.0 - bqx;
  S logsum = x[0] * ln(x[0] / denom);
  for (std::size_t i = 1; i < n; ++i) logsum = logsum + x[i] * ln(x[i] / denom);

  S quad = spec.A(0, 0) * (x[0] * x[0]);
  for (std::size_t j = 1; j < n; ++j) quad = quad + spec.A(0, j) * (x[0] * x[j]);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      quad = quad + spec.A(i, j) * (x[i] * x[j]);

  const double sqrt8 = 2.8284271247461903;      // sqrt(8)
  const double c_plus = 2.414213562373095;      // 1 + sqrt(2)
  const double c_minus = -0.41421356237309515;  // 1 - sqrt(2)
  S ratio = (1.0 + c_plus * bqx) / (1.0 + c_minus * bqx);
  return (spec.R * spec.T) * logsum - quad / (sqrt8 * bqx) * ln(ratio);
}

// Rosenbrock's valley, the standard 2-D optimizer test.
template <class S>
S rosenbrock(std::span<const S> x) {
  if (x.size() != 2)
    throw std::invalid_argument("rosenbrock: expects a 2-D point");
  S a = 1.0 - x[0];
  S d = x[1] - x[0] * x[0];
  return a * a + 100.0 * (d * d);
}

// Fixed 3x3 SPD quadratic f(w) = 0.5 w^T A w - b^T w.  Newton's method
// solves it in a single unit step.
inline constexpr double kQuadraticA[3][3] = {
    {4.0, 1.0, 0.5}, {1.0, 3.0, 0.25}, {0.5, 0.25, 2.0}};
inline constexpr double kQuadraticB[3] = {1.0, 2.0, 3.0};

template <class S>
S quadratic(std::span<const S> w) {
  if (w.size() != 3)
    throw std::invalid_argument("quadratic: expects a 3-D point");
  S quad = kQuadraticA[0][0] * (w[0] * w[0]);
  for (std::size_t j = 1; j < 3; ++j)
    quad = quad + kQuadraticA[0][j] * (w[0] * w[j]);
  for (std::size_t i = 1; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      quad = quad + kQuadraticA[i][j] * (w[i] * w[j]);
  S lin = kQuadraticB[0] * w[0];
  for (std::size_t i = 1; i < 3; ++i) lin = lin + kQuadraticB[i] * w[i];
  return 0.5 * quad - lin;
}

}  // namespace adkit::bench

#endif
