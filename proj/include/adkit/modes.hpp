#ifndef ADKIT_MODES_HPP
#define ADKIT_MODES_HPP

#include <span>
#include <vector>

#include "adkit/dual.hpp"
#include "adkit/numdiff.hpp"
#include "adkit/tape.hpp"

namespace adkit {

enum class GradMode { forward, reverse, numeric };

struct GradEval {
  double value = 0.0;
  std::vector<double> grad;
};

// One gradient of a generic scalar-valued f by the selected mode.  Numeric
// mode uses the center stencil with per-coordinate default steps and gets
// the value from one extra plain evaluation.
template <class F>
GradEval eval_gradient(F&& f, std::span<const double> x, GradMode mode) {
  GradEval out;
  switch (mode) {
    case GradMode::forward: {
      auto r = dual::grad_forward(f, x);
      out.value = r.value;
      out.grad = std::move(r.grad);
      break;
    }
    case GradMode::reverse: {
      auto r = tape::grad_reverse(f, x);
      out.value = r.value;
      out.grad = std::move(r.grad);
      break;
    }
    case GradMode::numeric: {
      out.value = f(x);
      out.grad = numdiff::grad_numeric(f, x, numdiff::FdKind::center).grad;
      break;
    }
  }
  return out;
}

}  // namespace adkit

#endif
