#ifndef ADKIT_NEST_HPP
#define ADKIT_NEST_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adkit/dual.hpp"
#include "adkit/errors.hpp"
#include "adkit/matrix.hpp"
#include "adkit/real.hpp"
#include "adkit/tape.hpp"

namespace adkit::nest {

// Each active differentiation draws a fresh generation number.  Two
// simultaneously active differentiations therefore never share a tag, which
// is what keeps their perturbations distinct.
using EpsilonTag = std::uint64_t;

inline constexpr EpsilonTag kPlainTag = 0;

EpsilonTag fresh_tag();

namespace detail {
struct ScalarNode;
}

// Runtime-tagged scalar: either a plain real or a dual whose perturbation is
// labelled with the EpsilonTag of the differentiation that introduced it.
// Primal and tangent are Scalars themselves, so duals nest to any depth;
// tags grow strictly outward along a nesting tower.
class Scalar {
 public:
  Scalar() = default;
  Scalar(double v) : plain_(v) {}

  static Scalar dual(Scalar primal, Scalar tangent, EpsilonTag tag);

  bool is_plain() const { return node_ == nullptr; }

  double as_plain() const {
    if (!is_plain())
      throw std::logic_error("nest: scalar still carries a perturbation");
    return plain_;
  }

  EpsilonTag tag() const;
  const Scalar& primal() const;
  const Scalar& tangent() const;

 private:
  double plain_ = 0.0;
  std::shared_ptr<const detail::ScalarNode> node_;
};

namespace detail {
struct ScalarNode {
  Scalar primal;
  Scalar tangent;
  EpsilonTag tag;
};
}  // namespace detail

inline Scalar Scalar::dual(Scalar primal, Scalar tangent, EpsilonTag tag) {
  if (primal.tag() >= tag || tangent.tag() >= tag)
    throw PerturbationConfusionError(
        "nest: components already carry a tag at or above the new level");
  Scalar s;
  s.node_ = std::make_shared<const detail::ScalarNode>(
      detail::ScalarNode{std::move(primal), std::move(tangent), tag});
  return s;
}

inline EpsilonTag Scalar::tag() const { return node_ ? node_->tag : kPlainTag; }
inline const Scalar& Scalar::primal() const { return node_->primal; }
inline const Scalar& Scalar::tangent() const { return node_->tangent; }

inline double primal_value(const Scalar& s) {
  return s.is_plain() ? s.as_plain() : primal_value(s.primal());
}

// --- arithmetic -------------------------------------------------------------
// Same-tag operands follow the dual rules; a lower-tag operand acts as a
// constant at the higher tag (its perturbation, if any, rides along inside
// the primal and tangent components).

inline Scalar operator-(const Scalar& a) {
  if (a.is_plain()) return Scalar(-a.as_plain());
  return Scalar::dual(-a.primal(), -a.tangent(), a.tag());
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_plain() && b.is_plain()) return Scalar(a.as_plain() + b.as_plain());
  if (a.tag() == b.tag())
    return Scalar::dual(a.primal() + b.primal(), a.tangent() + b.tangent(), a.tag());
  if (a.tag() > b.tag())
    return Scalar::dual(a.primal() + b, a.tangent(), a.tag());
  return Scalar::dual(a + b.primal(), b.tangent(), b.tag());
}

inline Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_plain() && b.is_plain()) return Scalar(a.as_plain() - b.as_plain());
  if (a.tag() == b.tag())
    return Scalar::dual(a.primal() - b.primal(), a.tangent() - b.tangent(), a.tag());
  if (a.tag() > b.tag())
    return Scalar::dual(a.primal() - b, a.tangent(), a.tag());
  return Scalar::dual(a - b.primal(), -b.tangent(), b.tag());
}

inline Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_plain() && b.is_plain()) return Scalar(a.as_plain() * b.as_plain());
  if (a.tag() == b.tag())
    return Scalar::dual(a.primal() * b.primal(),
                        a.primal() * b.tangent() + a.tangent() * b.primal(),
                        a.tag());
  if (a.tag() > b.tag())
    return Scalar::dual(a.primal() * b, a.tangent() * b, a.tag());
  return Scalar::dual(a * b.primal(), a * b.tangent(), b.tag());
}

inline Scalar operator/(const Scalar& a, const Scalar& b) {
  if (primal_value(b) == 0.0)
    throw DomainError("nest division: divisor primal is zero");
  if (a.is_plain() && b.is_plain()) return Scalar(a.as_plain() / b.as_plain());
  if (a.tag() == b.tag())
    return Scalar::dual(a.primal() / b.primal(),
                        (a.tangent() * b.primal() - a.primal() * b.tangent()) /
                            (b.primal() * b.primal()),
                        a.tag());
  if (a.tag() > b.tag())
    return Scalar::dual(a.primal() / b, a.tangent() / b, a.tag());
  return Scalar::dual(a / b.primal(),
                      -(a * b.tangent()) / (b.primal() * b.primal()), b.tag());
}

// --- elementary functions -----------------------------------------------------

Scalar ln(const Scalar& a);
Scalar exp(const Scalar& a);
Scalar sin(const Scalar& a);
Scalar cos(const Scalar& a);
Scalar sqrt(const Scalar& a);
Scalar tanh(const Scalar& a);
Scalar neg(const Scalar& a);
Scalar recip(const Scalar& a);
Scalar atan2(const Scalar& y, const Scalar& x);

inline Scalar ln(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::ln(a.as_plain()));
  return Scalar::dual(ln(a.primal()), a.tangent() / a.primal(), a.tag());
}

inline Scalar exp(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::exp(a.as_plain()));
  Scalar e = exp(a.primal());
  return Scalar::dual(e, a.tangent() * e, a.tag());
}

inline Scalar sin(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::sin(a.as_plain()));
  return Scalar::dual(sin(a.primal()), a.tangent() * cos(a.primal()), a.tag());
}

inline Scalar cos(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::cos(a.as_plain()));
  return Scalar::dual(cos(a.primal()), -(a.tangent() * sin(a.primal())), a.tag());
}

inline Scalar sqrt(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::sqrt(a.as_plain()));
  Scalar s = sqrt(a.primal());
  return Scalar::dual(s, a.tangent() / (Scalar(2.0) * s), a.tag());
}

inline Scalar tanh(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::tanh(a.as_plain()));
  Scalar t = tanh(a.primal());
  return Scalar::dual(t, a.tangent() * (Scalar(1.0) - t * t), a.tag());
}

inline Scalar neg(const Scalar& a) { return -a; }

inline Scalar recip(const Scalar& a) {
  if (a.is_plain()) return Scalar(adkit::recip(a.as_plain()));
  return Scalar(1.0) / a;
}

inline Scalar atan2(const Scalar& y, const Scalar& x) {
  if (y.is_plain() && x.is_plain())
    return Scalar(adkit::atan2(y.as_plain(), x.as_plain()));
  const EpsilonTag t = y.tag() > x.tag() ? y.tag() : x.tag();
  const Scalar& yp = y.tag() == t ? y.primal() : y;
  const Scalar& xp = x.tag() == t ? x.primal() : x;
  Scalar denom = xp * xp + yp * yp;
  Scalar tan_y = y.tag() == t ? y.tangent() : Scalar(0.0);
  Scalar tan_x = x.tag() == t ? x.tangent() : Scalar(0.0);
  return Scalar::dual(atan2(yp, xp), (tan_y * xp - tan_x * yp) / denom, t);
}

// --- derivative operator --------------------------------------------------------

// Epsilon-coefficient of f(x + 1*eps) at a fresh tag.  A result whose top tag
// is younger than the one issued here means a perturbation escaped the
// differentiation that owns it.
template <class F>
Scalar derivative(F&& f, const Scalar& x) {
  const EpsilonTag tag = fresh_tag();
  Scalar r = f(Scalar::dual(x, Scalar(1.0), tag));
  if (r.tag() > tag)
    throw PerturbationConfusionError(
        "nest: result carries a perturbation younger than its differentiation");
  if (r.tag() == tag) return r.tangent();
  return Scalar(0.0);  // result does not depend on this perturbation
}

// --- second-order drivers --------------------------------------------------------

// Hessian-vector product by forward-over-reverse: evaluate f on duals whose
// primal is a tape variable and whose tangent is the constant v_i, then
// reverse-sweep from the tangent output, which is the directional gradient
// grad f . v.  One recording, one sweep, H is never materialized.
template <class F>
std::vector<double> hvp(F&& f, std::span<const double> x,
                        std::span<const double> v, tape::Tape& tp) {
  if (v.size() != x.size())
    throw std::invalid_argument("hvp: direction length must equal input arity");
  tp.clear();
  using DV = dual::Dual<tape::Var>;
  std::vector<DV> xs;
  xs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    xs.emplace_back(tp.variable(x[i]), tape::Var(v[i]));
  DV y = f(std::span<const DV>(xs));
  if (!y.tangent.active()) return std::vector<double>(x.size(), 0.0);
  return tp.reverse_sweep(y.tangent);
}

template <class F>
std::vector<double> hvp(F&& f, std::span<const double> x,
                        std::span<const double> v) {
  thread_local tape::Tape tp;
  return hvp(std::forward<F>(f), x, v, tp);
}

// Column i is hvp(f, x, e_i); no symmetrization is applied.
template <class F>
Matrix hessian(F&& f, std::span<const double> x) {
  const std::size_t n = x.size();
  Matrix h(n, n);
  std::vector<double> e(n, 0.0);
  thread_local tape::Tape tp;
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    std::vector<double> col = hvp(f, x, std::span<const double>(e), tp);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) h(i, j) = col[i];
  }
  return h;
}

}  // namespace adkit::nest

#endif
