#pragma once

#include <stdexcept>
#include <string>

namespace sigstream {

// Malformed input files (bad header, unparsable field, ...).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a data contract
// (crossed book, too few rows, single-class labels, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A time-bucket slice left too few rows to work with.  Derives from
// ValidationError so batch drivers can skip both with one handler.
struct EmptyBucketError : ValidationError {
  using ValidationError::ValidationError;
};

// Numerical failure (non-finite values, series out of domain, ...).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sigstream
