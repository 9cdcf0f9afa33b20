#pragma once

#include <stdexcept>
#include <string>

namespace gcg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad descriptor, wrong group shape, out-of-range parameter.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A (G, alpha, S) triple fails one of the three connection-set conditions.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Input is well formed but larger than a configured cap. Kept distinct from
// InvalidInput so callers can report feasibility separately from correctness.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A search ran out of its node budget before reaching an answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gcg
