#ifndef ADKIT_DUAL_HPP
#define ADKIT_DUAL_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "adkit/matrix.hpp"
#include "adkit/real.hpp"

namespace adkit::dual {

// Dual number v + v'*eps with eps^2 = 0.  The base B is double for ordinary
// forward mode and can itself be an AD scalar (tape variable, another Dual)
// for higher-order and mixed-mode derivatives.
template <class B = double>
struct Dual {
  B primal{};
  B tangent{};

  constexpr Dual() = default;

  // Lift of a constant: tangent is exactly zero.
  constexpr Dual(B p) : primal(std::move(p)), tangent() {}

  constexpr Dual(B p, B t) : primal(std::move(p)), tangent(std::move(t)) {}

  // Lets plain literals appear in generic code when B is itself an AD type.
  template <class D = double>
    requires(!std::is_same_v<B, double> && std::is_convertible_v<D, B>)
  constexpr Dual(double p) : primal(p), tangent() {}
};

Dual(double) -> Dual<double>;
Dual(double, double) -> Dual<double>;

template <class B>
double primal_value(const Dual<B>& a) {
  using adkit::primal_value;
  return primal_value(a.primal);
}

// --- arithmetic ------------------------------------------------------------

template <class B>
Dual<B> operator+(const Dual<B>& a, const Dual<B>& b) {
  return {a.primal + b.primal, a.tangent + b.tangent};
}

template <class B>
Dual<B> operator-(const Dual<B>& a, const Dual<B>& b) {
  return {a.primal - b.primal, a.tangent - b.tangent};
}

template <class B>
Dual<B> operator-(const Dual<B>& a) {
  return {-a.primal, -a.tangent};
}

template <class B>
Dual<B> operator*(const Dual<B>& a, const Dual<B>& b) {
  return {a.primal * b.primal, a.primal * b.tangent + a.tangent * b.primal};
}

template <class B>
Dual<B> operator/(const Dual<B>& a, const Dual<B>& b) {
  using adkit::primal_value;
  if (primal_value(b.primal) == 0.0)
    throw DomainError("dual division: divisor primal is zero");
  return {a.primal / b.primal,
          (a.tangent * b.primal - a.primal * b.tangent) / (b.primal * b.primal)};
}

// Mixed ops with plain constants avoid materialising a zero tangent, which
// keeps tapes under Dual<Var> free of dead nodes.
template <class B>
Dual<B> operator+(const Dual<B>& a, double c) {
  return {a.primal + c, a.tangent};
}
template <class B>
Dual<B> operator+(double c, const Dual<B>& a) {
  return {c + a.primal, a.tangent};
}
template <class B>
Dual<B> operator-(const Dual<B>& a, double c) {
  return {a.primal - c, a.tangent};
}
template <class B>
Dual<B> operator-(double c, const Dual<B>& a) {
  return {c - a.primal, -a.tangent};
}
template <class B>
Dual<B> operator*(const Dual<B>& a, double c) {
  return {a.primal * c, a.tangent * c};
}
template <class B>
Dual<B> operator*(double c, const Dual<B>& a) {
  return {c * a.primal, c * a.tangent};
}
template <class B>
Dual<B> operator/(const Dual<B>& a, double c) {
  if (c == 0.0) throw DomainError("dual division: divisor is zero");
  return {a.primal / c, a.tangent / c};
}
template <class B>
Dual<B> operator/(double c, const Dual<B>& a) {
  using adkit::primal_value;
  if (primal_value(a.primal) == 0.0)
    throw DomainError("dual division: divisor primal is zero");
  B v = c / a.primal;
  return {v, -(v * a.tangent) / a.primal};
}

// --- elementary functions via f(v + v' eps) = f(v) + f'(v) v' eps ----------

template <class B>
Dual<B> ln(const Dual<B>& a) {
  using adkit::primal_value;
  if (!(primal_value(a.primal) > 0.0))
    throw DomainError("ln: primal must be > 0");
  using adkit::ln;
  return {ln(a.primal), a.tangent / a.primal};
}

template <class B>
Dual<B> exp(const Dual<B>& a) {
  using adkit::exp;
  B e = exp(a.primal);
  return {e, a.tangent * e};
}

template <class B>
Dual<B> sin(const Dual<B>& a) {
  using adkit::cos;
  using adkit::sin;
  return {sin(a.primal), a.tangent * cos(a.primal)};
}

template <class B>
Dual<B> cos(const Dual<B>& a) {
  using adkit::cos;
  using adkit::sin;
  return {cos(a.primal), -(a.tangent * sin(a.primal))};
}

template <class B>
Dual<B> sqrt(const Dual<B>& a) {
  using adkit::primal_value;
  if (!(primal_value(a.primal) > 0.0))
    throw DomainError("sqrt: primal must be > 0 (tangent undefined at 0)");
  using adkit::sqrt;
  B s = sqrt(a.primal);
  return {s, a.tangent / (2.0 * s)};
}

template <class B>
Dual<B> tanh(const Dual<B>& a) {
  using adkit::tanh;
  B t = tanh(a.primal);
  return {t, a.tangent * (1.0 - t * t)};
}

template <class B>
Dual<B> neg(const Dual<B>& a) {
  return -a;
}

template <class B>
Dual<B> recip(const Dual<B>& a) {
  using adkit::primal_value;
  if (primal_value(a.primal) == 0.0)
    throw DomainError("recip: primal is zero");
  using adkit::recip;
  B r = recip(a.primal);
  return {r, -(a.tangent * r * r)};
}

template <class B>
Dual<B> atan2(const Dual<B>& y, const Dual<B>& x) {
  using adkit::primal_value;
  if (primal_value(y.primal) == 0.0 && primal_value(x.primal) == 0.0)
    throw DomainError("atan2: (0, 0) is outside the domain");
  using adkit::atan2;
  B denom = x.primal * x.primal + y.primal * y.primal;
  return {atan2(y.primal, x.primal),
          (y.tangent * x.primal - x.tangent * y.primal) / denom};
}

// --- drivers ----------------------------------------------------------------

struct JvpResult {
  std::vector<double> value;    // f(x)
  std::vector<double> tangent;  // J(x) * seed
};

struct Gradient {
  double value = 0.0;
  std::vector<double> grad;
};

struct JacobianResult {
  std::vector<double> value;
  Matrix jacobian;  // m x n
};

// Jacobian-vector product of a vector-valued f (signature
// span<const Dual<>> -> vector<Dual<>>) in one forward pass.
template <class F>
JvpResult jvp(F&& f, std::span<const double> x, std::span<const double> seed) {
  if (seed.size() != x.size())
    throw std::invalid_argument("jvp: seed length must equal input arity");
  std::vector<Dual<>> xs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xs[i] = {x[i], seed[i]};
  std::vector<Dual<>> ys = f(std::span<const Dual<>>(xs));
  JvpResult out;
  out.value.reserve(ys.size());
  out.tangent.reserve(ys.size());
  for (const Dual<>& y : ys) {
    out.value.push_back(y.primal);
    out.tangent.push_back(y.tangent);
  }
  return out;
}

// Gradient of a scalar-valued f (span<const Dual<>> -> Dual<>) via n passes,
// one unit seed per coordinate.
template <class F>
Gradient grad_forward(F&& f, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<Dual<>> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = Dual<>{x[i]};
  Gradient out;
  out.grad.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i].tangent = 1.0;
    Dual<> y = f(std::span<const Dual<>>(xs));
    xs[i].tangent = 0.0;
    out.value = y.primal;
    out.grad[i] = y.tangent;
  }
  if (n == 0) {
    Dual<> y = f(std::span<const Dual<>>(xs));
    out.value = y.primal;
  }
  return out;
}

// Full m x n Jacobian of a vector-valued f, one forward pass per column.
template <class F>
JacobianResult jacobian_forward(F&& f, std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<Dual<>> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = Dual<>{x[i]};
  JacobianResult out;
  for (std::size_t j = 0; j < n; ++j) {
    xs[j].tangent = 1.0;
    std::vector<Dual<>> ys = f(std::span<const Dual<>>(xs));
    xs[j].tangent = 0.0;
    if (j == 0) {
      out.value.reserve(ys.size());
      for (const Dual<>& y : ys) out.value.push_back(y.primal);
      out.jacobian = Matrix(ys.size(), n);
    }
    for (std::size_t i = 0; i < ys.size(); ++i) out.jacobian(i, j) = ys[i].tangent;
  }
  if (n == 0) {
    std::vector<Dual<>> ys = f(std::span<const Dual<>>(xs));
    for (const Dual<>& y : ys) out.value.push_back(y.primal);
    out.jacobian = Matrix(ys.size(), 0);
  }
  return out;
}

}  // namespace adkit::dual

#endif
