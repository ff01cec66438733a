#ifndef ADKIT_NUMDIFF_HPP
#define ADKIT_NUMDIFF_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace adkit::numdiff {

enum class FdKind { forward, center };

// A fixed finite-difference scheme: which stencil, and the step h > 0.
struct DiffScheme {
  FdKind kind = FdKind::center;
  double step = 1e-6;
};

// Step heuristics balancing truncation against round-off: sqrt(ulp) scaling
// for the first-order stencil, cbrt(ulp) for the second-order one.
inline double default_step(FdKind kind, double xi) {
  static const double sqrt_ulp = std::sqrt(std::numeric_limits<double>::epsilon());
  static const double cbrt_ulp = std::cbrt(std::numeric_limits<double>::epsilon());
  const double scale = std::max(1.0, std::fabs(xi));
  return (kind == FdKind::forward ? sqrt_ulp : cbrt_ulp) * scale;
}

inline void check_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("finite difference: step must be finite and > 0");
}

// (f(x + h e_i) - f(x)) / h, truncation error O(h).
template <class F>
double forward_diff(F&& f, std::span<const double> x, std::size_t i, double h) {
  check_step(h);
  if (i >= x.size()) throw std::invalid_argument("forward_diff: index out of range");
  std::vector<double> xp(x.begin(), x.end());
  const double fx = f(std::span<const double>(xp));
  xp[i] = x[i] + h;
  const double fxh = f(std::span<const double>(xp));
  return (fxh - fx) / h;
}

// (f(x + h e_i) - f(x - h e_i)) / 2h, truncation error O(h^2).
template <class F>
double central_diff(F&& f, std::span<const double> x, std::size_t i, double h) {
  check_step(h);
  if (i >= x.size()) throw std::invalid_argument("central_diff: index out of range");
  std::vector<double> xp(x.begin(), x.end());
  xp[i] = x[i] + h;
  const double fp = f(std::span<const double>(xp));
  xp[i] = x[i] - h;
  const double fm = f(std::span<const double>(xp));
  return (fp - fm) / (2.0 * h);
}

struct NumericGradient {
  std::vector<double> grad;
  std::size_t evals = 0;  // exactly n+1 (forward) or 2n (center)
};

namespace detail {

template <class F>
NumericGradient grad_numeric_impl(F&& f, std::span<const double> x, FdKind kind,
                                  double fixed_step) {
  const std::size_t n = x.size();
  NumericGradient out;
  out.grad.resize(n);
  std::vector<double> xp(x.begin(), x.end());
  if (kind == FdKind::forward) {
    const double fx = f(std::span<const double>(xp));
    ++out.evals;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = fixed_step > 0.0 ? fixed_step : default_step(kind, x[i]);
      xp[i] = x[i] + h;
      const double fxh = f(std::span<const double>(xp));
      ++out.evals;
      xp[i] = x[i];
      out.grad[i] = (fxh - fx) / h;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const double h = fixed_step > 0.0 ? fixed_step : default_step(kind, x[i]);
      xp[i] = x[i] + h;
      const double fp = f(std::span<const double>(xp));
      xp[i] = x[i] - h;
      const double fm = f(std::span<const double>(xp));
      out.evals += 2;
      xp[i] = x[i];
      out.grad[i] = (fp - fm) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace detail

// Gradient with one fixed step for every coordinate.
template <class F>
NumericGradient grad_numeric(F&& f, std::span<const double> x,
                             const DiffScheme& scheme) {
  check_step(scheme.step);
  return detail::grad_numeric_impl(std::forward<F>(f), x, scheme.kind, scheme.step);
}

// Gradient with the per-coordinate default step.
template <class F>
NumericGradient grad_numeric(F&& f, std::span<const double> x, FdKind kind) {
  return detail::grad_numeric_impl(std::forward<F>(f), x, kind, 0.0);
}

struct ErrorCurveRow {
  double h;
  double e_forward;  // |forward estimate - exact derivative|
  double e_center;   // |center estimate - exact derivative|
};

// 100 points log-spaced over [1e-14, 1e-1], spanning the round-off and
// truncation regimes.
std::vector<double> default_h_grid();
std::vector<double> h_grid(double hmin, double hmax, std::size_t points);

// Error-vs-step curve at x0 for the fixed quartic-composition test function
// f(x) = 64x(1-x)(1-2x)^2(1-8x+8x^2)^2, measured against its optimized
// closed-form derivative (independent of any AD code path).
std::vector<ErrorCurveRow> error_curve(double x0, std::span<const double> grid);

}  // namespace adkit::numdiff

#endif
