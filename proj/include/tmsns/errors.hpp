#pragma once

#include <stdexcept>

namespace tmsns {

// Base class for all library failures so callers can catch the family at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Required prefix length exceeds the configured hard cap (lambda too close to 1
// for the cap, or the tolerance target is unreachable).
struct TruncationOverflow : Error {
  using Error::Error;
};

// A distribution without a monotone-tail certificate was passed to an operation
// that needs one.
struct UncertifiedTail : Error {
  using Error::Error;
};

// Fock-space cutoff too small: accumulated truncation deficit above the bound.
struct CutoffTooSmall : Error {
  using Error::Error;
};

// Operand prefix lengths do not overlap enough to compare or solve.
struct IncompatibleTruncation : Error {
  using Error::Error;
};

// Toeplitz deconvolution needs p_0 > 0 in natural index order.
struct DivisionByZeroMass : Error {
  using Error::Error;
};

// A threshold scan found no stochastic -> non-stochastic transition in range.
struct NoSignChange : Error {
  using Error::Error;
};

}  // namespace tmsns
