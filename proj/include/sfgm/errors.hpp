#pragma once

#include <stdexcept>
#include <string>

namespace sfgm {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input vector has the wrong length for the oracle.
struct DimensionMismatch : Error {
  using Error::Error;
};

// Input contains NaN or infinity where finite values are required.
struct NonFiniteInput : Error {
  using Error::Error;
};

// alpha cannot be computed: gamma, S and mu are all zero, so the
// step-size polynomial degenerates and the method cannot progress.
struct DegenerateAlpha : Error {
  using Error::Error;
};

// The weighted average defining y has a zero denominator.
struct DegenerateY : Error {
  using Error::Error;
};

// gamma_{k+1} <= 0, so the v-recursion cannot be evaluated.
struct DegenerateGamma : Error {
  using Error::Error;
};

// The scanning function has nonpositive curvature; its argmin is undefined.
struct FlatScanningFunction : Error {
  using Error::Error;
};

// Requested tolerance lies outside the domain where the iteration
// bounds are valid (requires eps <= mu*R0^2/2).
struct ValidityDomain : Error {
  using Error::Error;
};

// Invalid solver configuration (e.g. gamma0 = 0 together with mu = 0).
struct ConfigError : Error {
  using Error::Error;
};

// Objective increased for too many consecutive iterations; the
// configured Lipschitz constant is almost certainly too small.
struct StallError : Error {
  StallError(const std::string& what, long iteration) : Error(what), iteration(iteration) {}
  long iteration;
};

// Power iteration or a ground-truth solve failed to converge. Carries the
// last two Rayleigh quotients (or residuals) for post-mortem inspection.
struct ConvergenceFailure : Error {
  ConvergenceFailure(const std::string& what, double last, double previous)
      : Error(what), last(last), previous(previous) {}
  double last;
  double previous;
};

// Malformed input text; message carries the 1-based line number.
struct ParseError : Error {
  ParseError(long line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  long line;
};

}  // namespace sfgm
