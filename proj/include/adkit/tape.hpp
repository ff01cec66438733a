#ifndef ADKIT_TAPE_HPP
#define ADKIT_TAPE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "adkit/errors.hpp"
#include "adkit/matrix.hpp"
#include "adkit/ops.hpp"
#include "adkit/real.hpp"

namespace adkit::tape {

class Tape;

// Scalar bound to a tape node.  A default- or double-constructed Var is
// passive: it behaves as a constant and records nothing, which lets one
// generic function body serve plain evaluation and recording alike.
class Var {
 public:
  constexpr Var() = default;
  constexpr Var(double v) : value_(v) {}

  double value() const { return value_; }
  bool active() const { return tape_ != nullptr; }
  Tape* tape() const { return tape_; }
  std::uint32_t index() const { return index_; }

 private:
  friend class Tape;
  constexpr Var(double v, Tape* t, std::uint32_t i)
      : value_(v), tape_(t), index_(i) {}

  double value_ = 0.0;
  Tape* tape_ = nullptr;
  std::uint32_t index_ = 0;
};

inline double primal_value(const Var& v) { return v.value(); }

// Wengert list.  Each node stores its value and the local partials with
// respect to its (at most two) inputs, so a reverse sweep never re-evaluates
// any elementary function.  Adjoint storage lives beside the nodes and is
// reset at the start of every sweep; one recording supports many sweeps.
//
// Storage is a grow-only arena indexed by a live count rather than a
// push_back vector: recording is the hot path of every gradient, and the
// arena keeps it to one predictable capacity check plus plain stores.
class Tape {
 public:
  static constexpr std::uint32_t kNoInput = 0xffffffffu;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Registers an independent variable (an input node).
  Var variable(double v) {
    const std::uint32_t id = push(OpKind::input, v, 0.0, 0.0, kNoInput, kNoInput);
    inputs_.push_back(id);
    return Var(v, this, id);
  }

  Var record_unary(OpKind k, const Var& a, double value, double pa,
                   std::uint64_t cost) {
    record_ops_ += cost;
    return Var(value, this, push(k, value, pa, 0.0, a.index(), kNoInput));
  }

  Var record_binary(OpKind k, const Var& a, const Var& b, double value,
                    double pa, double pb, std::uint64_t cost) {
    record_ops_ += cost;
    return Var(value, this, push(k, value, pa, pb, a.index(), b.index()));
  }

  std::size_t size() const { return cnt_; }
  std::size_t num_inputs() const { return inputs_.size(); }

  double value_at(std::size_t i) const { return nodes_[i].value; }
  double adjoint_at(std::size_t i) const { return adjoints_[i]; }
  OpKind kind_at(std::size_t i) const { return kinds_[i]; }

  // Drops all nodes but keeps capacity, so a reused tape stops allocating
  // after the first recording of a given size.
  void clear() {
    node_head_ = nodes_.data();
    kind_head_ = kinds_.data();
    cnt_ = 0;
    inputs_.clear();
    record_ops_ = 0;
    sweep_ops_ = 0;
    sweep_count_ = 0;
  }

  // Propagates adjoints from the seeded outputs down to the inputs; the
  // input adjoints land in `grad` (registration order, reusing capacity).
  void reverse_sweep_into(std::span<const Var> outputs,
                          std::span<const double> seeds,
                          std::vector<double>& grad) {
    if (cnt_ == 0) throw TapeError("reverse_sweep: tape is empty");
    if (outputs.size() != seeds.size())
      throw std::invalid_argument("reverse_sweep: one seed per output required");
    adjoints_.assign(cnt_, 0.0);
    for (std::size_t k = 0; k < outputs.size(); ++k) {
      const Var& out = outputs[k];
      if (!out.active() || out.tape() != this)
        throw TapeError("reverse_sweep: output does not live on this tape");
      adjoints_[out.index()] += seeds[k];
    }
    ++sweep_count_;
    std::uint64_t ops = 0;
    const Node* const base = nodes_.data();
    double* const adj = adjoints_.data();
    for (std::size_t i = cnt_; i-- > 0;) {
      const Node& nd = base[i];
      const std::uint32_t i0 = nd.in0;
      if (i0 == kNoInput) continue;
      const double w = adj[i];
      adj[i0] += w * nd.p0;
      ops += 2;
      const std::uint32_t i1 = nd.in1;
      if (i1 != kNoInput) {
        adj[i1] += w * nd.p1;
        ops += 2;
      }
    }
    sweep_ops_ += ops;
    grad.resize(inputs_.size());
    for (std::size_t k = 0; k < inputs_.size(); ++k) grad[k] = adj[inputs_[k]];
  }

  std::vector<double> reverse_sweep(std::span<const Var> outputs,
                                    std::span<const double> seeds) {
    std::vector<double> grad;
    reverse_sweep_into(outputs, seeds, grad);
    return grad;
  }

  std::vector<double> reverse_sweep(const Var& output, double seed = 1.0) {
    return reverse_sweep(std::span<const Var>(&output, 1),
                         std::span<const double>(&seed, 1));
  }

  // One line per node: id opkind in0 in1 value p0 p1 (-1 for absent inputs).
  void dump(std::ostream& os) const;

  // Scalar-operation tallies used for the cost-ratio study.  Recording ops
  // count every double operation spent on values and partials; sweep ops
  // count the multiply-accumulate per stored input slot.
  std::uint64_t record_ops() const { return record_ops_; }
  std::uint64_t sweep_ops() const { return sweep_ops_; }
  std::uint64_t sweep_count() const { return sweep_count_; }

  // Scratch input buffer shared by the drivers below so that a reused tape
  // makes a gradient evaluation allocation-free in the steady state.
  std::vector<Var>& input_scratch() { return input_scratch_; }

 private:
  struct Node {
    double value;
    double p0;
    double p1;
    std::uint32_t in0;
    std::uint32_t in1;
  };

  void grow();

  std::uint32_t push(OpKind k, double value, double p0, double p1,
                     std::uint32_t in0, std::uint32_t in1) {
    if (node_head_ == node_cap_) [[unlikely]] grow();
    *node_head_++ = Node{value, p0, p1, in0, in1};
    *kind_head_++ = k;
    const std::uint32_t id = cnt_;
    cnt_ = id + 1;
    return id;
  }

  std::vector<Node> nodes_;   // arena; live prefix is [0, cnt_)
  std::vector<OpKind> kinds_;
  Node* node_head_ = nullptr;  // next write position inside nodes_
  Node* node_cap_ = nullptr;
  OpKind* kind_head_ = nullptr;
  std::uint32_t cnt_ = 0;
  std::vector<std::uint32_t> inputs_;
  std::vector<double> adjoints_;
  std::vector<Var> input_scratch_;
  std::uint64_t record_ops_ = 0;
  std::uint64_t sweep_ops_ = 0;
  std::uint64_t sweep_count_ = 0;
};

namespace detail {

[[noreturn]] void throw_tape_mismatch();

}  // namespace detail

// --- arithmetic -------------------------------------------------------------
//
// Each operator sorts out which operands are active.  Both-active-on-
// different-tapes is the one illegal combination; a passive operand is a
// constant and contributes no input slot.

inline Var operator+(const Var& a, const Var& b) {
  const double v = a.value() + b.value();
  Tape* t = a.tape();
  if (!t) {
    if (!b.active()) return Var(v);
    return b.tape()->record_unary(OpKind::add, b, v, 1.0, 1);
  }
  if (!b.active()) return t->record_unary(OpKind::add, a, v, 1.0, 1);
  if (t != b.tape()) [[unlikely]] detail::throw_tape_mismatch();
  return t->record_binary(OpKind::add, a, b, v, 1.0, 1.0, 1);
}

inline Var operator-(const Var& a, const Var& b) {
  const double v = a.value() - b.value();
  Tape* t = a.tape();
  if (!t) {
    if (!b.active()) return Var(v);
    return b.tape()->record_unary(OpKind::sub, b, v, -1.0, 1);
  }
  if (!b.active()) return t->record_unary(OpKind::sub, a, v, 1.0, 1);
  if (t != b.tape()) [[unlikely]] detail::throw_tape_mismatch();
  return t->record_binary(OpKind::sub, a, b, v, 1.0, -1.0, 1);
}

inline Var operator-(const Var& a) {
  if (!a.active()) return Var(-a.value());
  return a.tape()->record_unary(OpKind::neg, a, -a.value(), -1.0, 1);
}

inline Var operator*(const Var& a, const Var& b) {
  const double v = a.value() * b.value();
  Tape* t = a.tape();
  if (!t) {
    if (!b.active()) return Var(v);
    return b.tape()->record_unary(OpKind::mul, b, v, a.value(), 1);
  }
  if (!b.active()) return t->record_unary(OpKind::mul, a, v, b.value(), 1);
  if (t != b.tape()) [[unlikely]] detail::throw_tape_mismatch();
  return t->record_binary(OpKind::mul, a, b, v, b.value(), a.value(), 1);
}

inline Var operator/(const Var& a, const Var& b) {
  if (b.value() == 0.0) throw DomainError("tape division: divisor value is zero");
  Tape* t = a.tape();
  if (!t) {
    const double v = a.value() / b.value();
    if (!b.active()) return Var(v);
    return b.tape()->record_unary(OpKind::div, b, v, -v / b.value(), 3);
  }
  const double inv = 1.0 / b.value();
  const double v = a.value() * inv;
  if (!b.active()) return t->record_unary(OpKind::div, a, v, inv, 2);
  if (t != b.tape()) [[unlikely]] detail::throw_tape_mismatch();
  return t->record_binary(OpKind::div, a, b, v, inv, -v * inv, 4);
}

inline Var operator+(const Var& a, double c) { return a + Var(c); }
inline Var operator+(double c, const Var& a) { return Var(c) + a; }
inline Var operator-(const Var& a, double c) { return a - Var(c); }
inline Var operator-(double c, const Var& a) { return Var(c) - a; }
inline Var operator*(const Var& a, double c) { return a * Var(c); }
inline Var operator*(double c, const Var& a) { return Var(c) * a; }
inline Var operator/(const Var& a, double c) { return a / Var(c); }
inline Var operator/(double c, const Var& a) { return Var(c) / a; }

// --- elementary functions ---------------------------------------------------

inline Var ln(const Var& a) {
  using adkit::ln;
  const double v = ln(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::ln, a, v, 1.0 / a.value(), 2);
}

inline Var exp(const Var& a) {
  using adkit::exp;
  const double v = exp(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::exp, a, v, v, 1);
}

inline Var sin(const Var& a) {
  using adkit::cos;
  using adkit::sin;
  const double v = sin(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::sin, a, v, cos(a.value()), 2);
}

inline Var cos(const Var& a) {
  using adkit::cos;
  using adkit::sin;
  const double v = cos(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::cos, a, v, -sin(a.value()), 3);
}

inline Var sqrt(const Var& a) {
  using adkit::sqrt;
  const double v = sqrt(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::sqrt, a, v, 0.5 / v, 2);
}

inline Var tanh(const Var& a) {
  using adkit::tanh;
  const double v = tanh(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::tanh, a, v, 1.0 - v * v, 3);
}

inline Var neg(const Var& a) { return -a; }

inline Var recip(const Var& a) {
  using adkit::recip;
  const double v = recip(a.value());
  if (!a.active()) return Var(v);
  return a.tape()->record_unary(OpKind::recip, a, v, -v * v, 3);
}

inline Var atan2(const Var& y, const Var& x) {
  using adkit::atan2;
  const double v = atan2(y.value(), x.value());
  Tape* t = y.tape();
  if (!t && !x.active()) return Var(v);
  const double denom = x.value() * x.value() + y.value() * y.value();
  if (!t) return x.tape()->record_unary(OpKind::atan2, x, v, -y.value() / denom, 6);
  if (!x.active()) return t->record_unary(OpKind::atan2, y, v, x.value() / denom, 5);
  if (t != x.tape()) [[unlikely]] detail::throw_tape_mismatch();
  return t->record_binary(OpKind::atan2, y, x, v, x.value() / denom,
                          -y.value() / denom, 7);
}

inline Var atan2(const Var& y, double x) { return atan2(y, Var(x)); }
inline Var atan2(double y, const Var& x) { return atan2(Var(y), x); }

// --- drivers ----------------------------------------------------------------

struct Gradient {
  double value = 0.0;
  std::vector<double> grad;
};

struct VjpResult {
  std::vector<double> value;      // f(x)
  std::vector<double> cotangent;  // r^T J(x)
};

struct JacobianResult {
  std::vector<double> value;
  Matrix jacobian;  // m x n
};

namespace detail {

inline std::span<const Var> register_inputs(Tape& tape,
                                            std::span<const double> x) {
  std::vector<Var>& xs = tape.input_scratch();
  xs.clear();
  xs.reserve(x.size());
  for (double v : x) xs.push_back(tape.variable(v));
  return std::span<const Var>(xs);
}

}  // namespace detail

// Gradient of a scalar-valued f (span<const Var> -> Var): one recording into
// the given tape (cleared first), one reverse sweep.  Reuses the capacity of
// `out.grad`, so steady-state repeated calls do not allocate.
template <class F>
Gradient& grad_reverse(F&& f, std::span<const double> x, Tape& tape,
                       Gradient& out) {
  tape.clear();
  Var y = f(detail::register_inputs(tape, x));
  out.value = y.value();
  if (!y.active()) {
    out.grad.assign(x.size(), 0.0);  // f did not depend on its inputs
    return out;
  }
  const double seed = 1.0;
  tape.reverse_sweep_into(std::span<const Var>(&y, 1),
                          std::span<const double>(&seed, 1), out.grad);
  return out;
}

template <class F>
Gradient grad_reverse(F&& f, std::span<const double> x, Tape& tape) {
  Gradient out;
  grad_reverse(std::forward<F>(f), x, tape, out);
  return out;
}

template <class F>
Gradient grad_reverse(F&& f, std::span<const double> x) {
  thread_local Tape tape;
  return grad_reverse(std::forward<F>(f), x, tape);
}

// Vector-Jacobian product of a vector-valued f (span<const Var> ->
// vector<Var>): one recording, one sweep seeded with r.
template <class F>
VjpResult vjp(F&& f, std::span<const double> x, std::span<const double> r,
              Tape& tape) {
  tape.clear();
  std::vector<Var> ys = f(detail::register_inputs(tape, x));
  if (r.size() != ys.size())
    throw std::invalid_argument("vjp: seed length must equal output arity");
  VjpResult out;
  out.value.reserve(ys.size());
  for (const Var& y : ys) out.value.push_back(y.value());
  std::vector<Var> active;
  std::vector<double> seeds;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i].active()) {
      active.push_back(ys[i]);
      seeds.push_back(r[i]);
    }
  }
  if (active.empty()) {
    out.cotangent.assign(x.size(), 0.0);
    return out;
  }
  out.cotangent = tape.reverse_sweep(active, seeds);
  return out;
}

template <class F>
VjpResult vjp(F&& f, std::span<const double> x, std::span<const double> r) {
  thread_local Tape tape;
  return vjp(std::forward<F>(f), x, r, tape);
}

// Full m x n Jacobian from a single recording and m unit-seeded sweeps.
template <class F>
JacobianResult jacobian_reverse(F&& f, std::span<const double> x, Tape& tape) {
  tape.clear();
  std::vector<Var> ys = f(detail::register_inputs(tape, x));
  JacobianResult out;
  out.value.reserve(ys.size());
  for (const Var& y : ys) out.value.push_back(y.value());
  out.jacobian = Matrix(ys.size(), x.size());
  std::vector<double> row;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!ys[i].active()) continue;  // constant output row stays zero
    const double seed = 1.0;
    tape.reverse_sweep_into(std::span<const Var>(&ys[i], 1),
                            std::span<const double>(&seed, 1), row);
    for (std::size_t j = 0; j < x.size(); ++j) out.jacobian(i, j) = row[j];
  }
  return out;
}

template <class F>
JacobianResult jacobian_reverse(F&& f, std::span<const double> x) {
  thread_local Tape tape;
  return jacobian_reverse(std::forward<F>(f), x, tape);
}

}  // namespace adkit::tape

#endif
