#ifndef ADKIT_OPCOUNT_HPP
#define ADKIT_OPCOUNT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "adkit/ops.hpp"
#include "adkit/real.hpp"

namespace adkit::bench {

// Per-kind tally of elementary operations performed during one evaluation.
class OpCounter {
 public:
  void bump(OpKind k) { ++counts_[static_cast<std::size_t>(k)]; }

  std::uint64_t count(OpKind k) const {
    return counts_[static_cast<std::size_t>(k)];
  }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < kNumOpKinds; ++i)
      if (static_cast<OpKind>(i) != OpKind::input) sum += counts_[i];
    return sum;
  }

 private:
  std::array<std::uint64_t, kNumOpKinds> counts_{};
};

// Scalar that behaves like double but bumps a counter on every elementary
// operation.  A counter-less Counted acts as a plain constant, so operations
// between two constants (compile-time coefficients and the like) count only
// when a counted operand is involved, exactly mirroring the tape's view.
class Counted {
 public:
  constexpr Counted() = default;
  constexpr Counted(double v) : value_(v) {}
  constexpr Counted(double v, OpCounter* c) : value_(v), counter_(c) {}

  double value() const { return value_; }
  OpCounter* counter() const { return counter_; }

 private:
  double value_ = 0.0;
  OpCounter* counter_ = nullptr;
};

inline double primal_value(const Counted& a) { return a.value(); }

namespace detail {

inline Counted tally(OpKind k, double v, const Counted& a, const Counted& b = {}) {
  OpCounter* c = a.counter() ? a.counter() : b.counter();
  if (c) c->bump(k);
  return Counted(v, c);
}

}  // namespace detail

inline Counted operator+(const Counted& a, const Counted& b) {
  return detail::tally(OpKind::add, a.value() + b.value(), a, b);
}
inline Counted operator-(const Counted& a, const Counted& b) {
  return detail::tally(OpKind::sub, a.value() - b.value(), a, b);
}
inline Counted operator*(const Counted& a, const Counted& b) {
  return detail::tally(OpKind::mul, a.value() * b.value(), a, b);
}
inline Counted operator/(const Counted& a, const Counted& b) {
  if (b.value() == 0.0)
    throw DomainError("counted division: divisor is zero");
  return detail::tally(OpKind::div, a.value() / b.value(), a, b);
}
inline Counted operator-(const Counted& a) {
  return detail::tally(OpKind::neg, -a.value(), a);
}

inline Counted operator+(double c, const Counted& a) { return Counted(c) + a; }
inline Counted operator+(const Counted& a, double c) { return a + Counted(c); }
inline Counted operator-(double c, const Counted& a) { return Counted(c) - a; }
inline Counted operator-(const Counted& a, double c) { return a - Counted(c); }
inline Counted operator*(double c, const Counted& a) { return Counted(c) * a; }
inline Counted operator*(const Counted& a, double c) { return a * Counted(c); }
inline Counted operator/(double c, const Counted& a) { return Counted(c) / a; }
inline Counted operator/(const Counted& a, double c) { return a / Counted(c); }

inline Counted ln(const Counted& a) {
  return detail::tally(OpKind::ln, adkit::ln(a.value()), a);
}
inline Counted exp(const Counted& a) {
  return detail::tally(OpKind::exp, adkit::exp(a.value()), a);
}
inline Counted sin(const Counted& a) {
  return detail::tally(OpKind::sin, adkit::sin(a.value()), a);
}
inline Counted cos(const Counted& a) {
  return detail::tally(OpKind::cos, adkit::cos(a.value()), a);
}
inline Counted sqrt(const Counted& a) {
  return detail::tally(OpKind::sqrt, adkit::sqrt(a.value()), a);
}
inline Counted tanh(const Counted& a) {
  return detail::tally(OpKind::tanh, adkit::tanh(a.value()), a);
}
inline Counted neg(const Counted& a) { return -a; }
inline Counted recip(const Counted& a) {
  return detail::tally(OpKind::recip, adkit::recip(a.value()), a);
}
inline Counted atan2(const Counted& y, const Counted& x) {
  return detail::tally(OpKind::atan2, adkit::atan2(y.value(), x.value()), y, x);
}

// Evaluates f (span<const Counted> -> Counted) once and returns the tallies.
template <class F>
OpCounter count_ops(F&& f, std::span<const double> x) {
  OpCounter counter;
  std::vector<Counted> xs;
  xs.reserve(x.size());
  for (double v : x) xs.emplace_back(v, &counter);
  (void)f(std::span<const Counted>(xs));
  return counter;
}

}  // namespace adkit::bench

#endif
