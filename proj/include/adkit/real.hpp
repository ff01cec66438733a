#ifndef ADKIT_REAL_HPP
#define ADKIT_REAL_HPP

#include <cmath>
#include <string>

#include "adkit/errors.hpp"

// Checked elementary functions on plain doubles.  Generic code calls ln, exp,
// sin, ... unqualified; for double these overloads apply, for AD scalars the
// overloads shipped with each scalar type take over.  Domain violations throw
// instead of returning NaN/inf so every scalar type fails the same way.

namespace adkit {

inline double ln(double v) {
  if (!(v > 0.0))
    throw DomainError("ln: argument must be > 0, got " + std::to_string(v));
  return std::log(v);
}

inline double exp(double v) { return std::exp(v); }
inline double sin(double v) { return std::sin(v); }
inline double cos(double v) { return std::cos(v); }

inline double sqrt(double v) {
  if (!(v > 0.0))
    throw DomainError("sqrt: argument must be > 0, got " + std::to_string(v));
  return std::sqrt(v);
}

inline double tanh(double v) { return std::tanh(v); }

inline double neg(double v) { return -v; }

inline double recip(double v) {
  if (v == 0.0) throw DomainError("recip: argument must be nonzero");
  return 1.0 / v;
}

inline double atan2(double y, double x) {
  if (y == 0.0 && x == 0.0)
    throw DomainError("atan2: (0, 0) is outside the domain");
  return std::atan2(y, x);
}

// Innermost plain value of any scalar in the kit; AD types overload this.
inline double primal_value(double v) { return v; }

}  // namespace adkit

#endif
