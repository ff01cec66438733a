#ifndef ADKIT_ERRORS_HPP
#define ADKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adkit {

// Root of the kit's exception hierarchy so callers can catch everything at
// the boundary (the CLI maps these to exit code 1).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An elementary operation was evaluated outside its differentiable domain
// (ln at <= 0, sqrt at <= 0, division by a zero primal, ...).
struct DomainError : Error {
  using Error::Error;
};

// Tape misuse: variables from different tapes combined, sweep on an empty
// tape, malformed node references.
struct TapeError : Error {
  using Error::Error;
};

// A nested-derivative result still references a perturbation introduced by an
// enclosing differentiation, which indicates the tagging discipline was
// bypassed.
struct PerturbationConfusionError : Error {
  using Error::Error;
};

// Newton step could not be computed because the Hessian is singular or too
// ill-conditioned to solve against.
struct SingularMatrixError : Error {
  using Error::Error;
};

// An iterative routine produced a non-finite value.
struct NumericalError : Error {
  using Error::Error;
};

// Bad command-line arguments (CLI maps this to exit code 2).
struct UsageError : Error {
  using Error::Error;
};

}  // namespace adkit

#endif
