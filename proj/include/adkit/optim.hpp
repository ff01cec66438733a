#ifndef ADKIT_OPTIM_HPP
#define ADKIT_OPTIM_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adkit/errors.hpp"
#include "adkit/matrix.hpp"
#include "adkit/modes.hpp"
#include "adkit/nest.hpp"
#include "adkit/tape.hpp"

namespace adkit::optim {

struct GDConfig {
  double eta = 1e-3;
  std::size_t max_iters = 1000;
  double grad_tol = 0.0;  // stop once the max-norm of the gradient drops below
  GradMode mode = GradMode::reverse;
};

struct TrajectoryPoint {
  std::vector<double> w;
  double f = 0.0;
  double grad_norm = 0.0;  // max norm
};

using Trajectory = std::vector<TrajectoryPoint>;

// Solves H d = rhs by full-pivot LU; throws SingularMatrixError with a
// condition diagnostic when the factorization finds no usable pivots.
std::vector<double> solve_linear(const Matrix& h, std::span<const double> rhs);

namespace detail {

inline double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline void check_finite(double fval, std::span<const double> grad,
                         std::size_t iter) {
  bool ok = std::isfinite(fval);
  for (double g : grad) ok = ok && std::isfinite(g);
  if (!ok)
    throw NumericalError("optimizer: non-finite value or gradient at iteration " +
                         std::to_string(iter));
}

}  // namespace detail

// Fixed-step steepest descent w <- w - eta * grad f(w); stops on grad_tol or
// max_iters.  The trajectory holds the initial point plus one entry per step.
template <class F>
Trajectory gradient_descent(F&& f, std::span<const double> w0,
                            const GDConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("gradient_descent: eta must be > 0");
  if (cfg.max_iters < 1)
    throw std::invalid_argument("gradient_descent: max_iters must be >= 1");

  std::vector<double> w(w0.begin(), w0.end());
  GradEval g = eval_gradient(f, std::span<const double>(w), cfg.mode);
  detail::check_finite(g.value, g.grad, 0);

  Trajectory traj;
  traj.reserve(cfg.max_iters + 1);
  traj.push_back({w, g.value, detail::max_norm(g.grad)});

  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    if (traj.back().grad_norm < cfg.grad_tol) break;
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.eta * g.grad[i];
    g = eval_gradient(f, std::span<const double>(w), cfg.mode);
    detail::check_finite(g.value, g.grad, iter);
    traj.push_back({w, g.value, detail::max_norm(g.grad)});
  }
  return traj;
}

// Newton iteration w <- w - eta * H^-1 grad f(w), gradient by reverse mode
// and Hessian assembled from Hessian-vector products.  If the full step does
// not decrease f, the step is halved until it does (a plain fallback, not an
// adaptive method): Newton stays exact on quadratics where the full step
// always decreases f.
template <class F>
Trajectory newton(F&& f, std::span<const double> w0, double eta,
                  std::size_t max_iters) {
  if (!(eta > 0.0)) throw std::invalid_argument("newton: eta must be > 0");
  if (max_iters < 1) throw std::invalid_argument("newton: max_iters must be >= 1");

  std::vector<double> w(w0.begin(), w0.end());
  tape::Gradient g = tape::grad_reverse(f, std::span<const double>(w));
  detail::check_finite(g.value, g.grad, 0);

  Trajectory traj;
  traj.reserve(max_iters + 1);
  traj.push_back({w, g.value, detail::max_norm(g.grad)});

  std::vector<double> trial(w.size());
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    Matrix h = nest::hessian(f, std::span<const double>(w));
    std::vector<double> d = solve_linear(h, g.grad);

    double step = eta;
    double f_trial = 0.0;
    for (int halvings = 0;; ++halvings) {
      for (std::size_t i = 0; i < w.size(); ++i) trial[i] = w[i] - step * d[i];
      f_trial = f(std::span<const double>(trial));
      if (f_trial <= g.value || halvings >= 60) break;
      step *= 0.5;
    }
    w = trial;
    g = tape::grad_reverse(f, std::span<const double>(w));
    detail::check_finite(g.value, g.grad, iter);
    traj.push_back({w, g.value, detail::max_norm(g.grad)});
  }
  return traj;
}

// --- 2-2-1 sigmoid MLP on XOR -------------------------------------------------

inline constexpr std::size_t kMlpParamCount = 9;

// Parameter layout: hidden weights w[0..3] (row-major 2x2), hidden biases
// w[4..5], output weights w[6..7], output bias w[8].
std::vector<double> mlp_init(std::uint64_t seed);

template <class S>
S mlp_sigmoid(const S& z) {
  return recip(1.0 + exp(-z));
}

// Full-batch squared-error loss E = sum over XOR points of 0.5 (t - y)^2.
template <class S>
S mlp_loss(std::span<const S> w) {
  if (w.size() != kMlpParamCount)
    throw std::invalid_argument("mlp_loss: expects 9 parameters");
  constexpr double xs[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  constexpr double ts[4] = {0, 1, 1, 0};
  S total(0.0);
  for (int p = 0; p < 4; ++p) {
    S h0 = mlp_sigmoid(w[0] * xs[p][0] + w[1] * xs[p][1] + w[4]);
    S h1 = mlp_sigmoid(w[2] * xs[p][0] + w[3] * xs[p][1] + w[5]);
    S y = mlp_sigmoid(w[6] * h0 + w[7] * h1 + w[8]);
    S r = ts[p] - y;
    total = total + 0.5 * (r * r);
  }
  return total;
}

struct MlpResult {
  std::vector<double> loss;     // loss[0] at the initial weights, then per epoch
  std::vector<double> weights;  // final parameters
};

MlpResult mlp_train(std::uint64_t seed, double eta, std::size_t epochs);

}  // namespace adkit::optim

#endif
