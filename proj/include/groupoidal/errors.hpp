#ifndef GROUPOIDAL_ERRORS_HPP
#define GROUPOIDAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace groupoidal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed tables, ids out of range, missing entries.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Raised by compose when s(a) != t(b).
class CompositionError : public Error {
 public:
  CompositionError(int source_of_left, int target_of_right)
      : Error("non-composable pair: s(a)=" + std::to_string(source_of_left) +
              " but t(b)=" + std::to_string(target_of_right)),
        source_of_left(source_of_left),
        target_of_right(target_of_right) {}
  int source_of_left;
  int target_of_right;
};

class EnumerationBoundError : public Error {
 public:
  using Error::Error;
};

// Moment mismatch, distinct fibres, wrong chart, non-vertical data.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace groupoidal

#endif
