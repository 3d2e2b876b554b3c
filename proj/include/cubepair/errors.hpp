#pragma once

#include <stdexcept>
#include <string>

namespace cubepair {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or out-of-range dimensions (n > 63, bin widths, etc).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed textual vectors or strategy files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A construction was handed an input that does not satisfy its hypotheses,
// or produced an output that failed re-verification.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Work that would exceed a memory or search budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Illegal moves and board/strategy mismatches in the game engine.
class GameError : public Error {
 public:
  using Error::Error;
};

}  // namespace cubepair
