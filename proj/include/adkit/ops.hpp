#ifndef ADKIT_OPS_HPP
#define ADKIT_OPS_HPP

#include <cstddef>
#include <string_view>

namespace adkit {

// Elementary operations every scalar type in the kit understands.  The set is
// closed: anything differentiable must be built from these plus + - * /.
enum class OpKind : unsigned char {
  input,
  add,
  sub,
  mul,
  div,
  neg,
  recip,
  ln,
  exp,
  sin,
  cos,
  sqrt,
  tanh,
  atan2,
};

inline constexpr std::size_t kNumOpKinds = 14;

constexpr std::string_view op_name(OpKind k) {
  switch (k) {
    case OpKind::input: return "input";
    case OpKind::add:   return "add";
    case OpKind::sub:   return "sub";
    case OpKind::mul:   return "mul";
    case OpKind::div:   return "div";
    case OpKind::neg:   return "neg";
    case OpKind::recip: return "recip";
    case OpKind::ln:    return "ln";
    case OpKind::exp:   return "exp";
    case OpKind::sin:   return "sin";
    case OpKind::cos:   return "cos";
    case OpKind::sqrt:  return "sqrt";
    case OpKind::tanh:  return "tanh";
    case OpKind::atan2: return "atan2";
  }
  return "?";
}

constexpr bool op_is_binary(OpKind k) {
  switch (k) {
    case OpKind::add:
    case OpKind::sub:
    case OpKind::mul:
    case OpKind::div:
    case OpKind::atan2:
      return true;
    default:
      return false;
  }
}

}  // namespace adkit

#endif
