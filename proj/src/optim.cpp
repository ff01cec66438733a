#include "adkit/optim.hpp"

#include <Eigen/Dense>

#include <limits>

#include "adkit/rng.hpp"

namespace adkit::optim {

std::vector<double> solve_linear(const Matrix& h, std::span<const double> rhs) {
  const std::size_t n = h.rows();
  if (h.cols() != n || rhs.size() != n)
    throw std::invalid_argument("solve_linear: shape mismatch");
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h(i, j);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) b(i) = rhs[i];

  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    const double max_piv = std::fabs(lu.matrixLU().diagonal().cwiseAbs().maxCoeff());
    const double min_piv = std::fabs(lu.matrixLU().diagonal().cwiseAbs().minCoeff());
    const double cond = min_piv > 0.0 ? max_piv / min_piv
                                      : std::numeric_limits<double>::infinity();
    throw SingularMatrixError(
        "newton: Hessian is singular to working precision (pivot ratio " +
        std::to_string(cond) + ")");
  }
  Eigen::VectorXd d = lu.solve(b);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = d(i);
  return out;
}

std::vector<double> mlp_init(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> w(kMlpParamCount);
  for (double& wi : w) wi = rng.uniform(-1.0, 1.0);
  return w;
}

MlpResult mlp_train(std::uint64_t seed, double eta, std::size_t epochs) {
  if (eta < 0.0) throw std::invalid_argument("mlp_train: eta must be >= 0");
  std::vector<double> w = mlp_init(seed);
  auto loss_fn = [](std::span<const tape::Var> ws) { return mlp_loss(ws); };

  MlpResult result;
  result.loss.reserve(epochs + 1);
  tape::Tape tape;
  tape::Gradient g =
      tape::grad_reverse(loss_fn, std::span<const double>(w), tape);
  result.loss.push_back(g.value);
  for (std::size_t e = 0; e < epochs; ++e) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= eta * g.grad[i];
    g = tape::grad_reverse(loss_fn, std::span<const double>(w), tape);
    detail::check_finite(g.value, g.grad, e + 1);
    result.loss.push_back(g.value);
  }
  result.weights = std::move(w);
  return result;
}

}  // namespace adkit::optim
