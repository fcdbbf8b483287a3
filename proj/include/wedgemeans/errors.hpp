#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wedgemeans {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input dimensions are inconsistent or out of range.
struct BadShape : Error {
  using Error::Error;
};

/// A Gram (sub)matrix has an eigenvalue below the -1e-9 * lambda_max floor,
/// i.e. the input is invalid or numerically unstable, not merely rank deficient.
struct DegenerateGram : Error {
  using Error::Error;
};

/// The vectors spanning a requested subspace are linearly dependent.
struct DegenerateSpan : Error {
  using Error::Error;
};

/// A subset enumeration would exceed the configured cap.
struct CapExceeded : Error {
  CapExceeded(const std::string& msg, std::uint64_t count)
      : Error(msg), subset_count(count) {}
  std::uint64_t subset_count;
};

struct NonPositiveInput : Error {
  using Error::Error;
};

struct ZeroDenominator : Error {
  using Error::Error;
};

struct DegenerateSimplex : Error {
  using Error::Error;
};

struct NonUnitDirection : Error {
  using Error::Error;
};

/// The replacement interval [lo, hi] of the monotone orthogonalization is
/// empty at some pivot. `step` is the 1-based pivot index where it failed.
struct InfeasibleInterval : Error {
  InfeasibleInterval(const std::string& msg, int step_index)
      : Error(msg), step(step_index) {}
  int step;
};

/// The search target's preconditions cannot be met by the configured shapes.
struct InfeasibleTarget : Error {
  using Error::Error;
};

/// Text input could not be parsed. Carries the 1-based line number and the
/// field being read when the failure occurred.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_number, std::string field_name)
      : Error(msg), line(line_number), field(std::move(field_name)) {}
  int line;
  std::string field;
};

}  // namespace wedgemeans
