#pragma once

#include <stdexcept>
#include <string>

namespace fockbell {

/// Input violates a documented precondition (non-unitary element, bad counts).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A network or table could not be assembled (unreachable detector, broken
/// interference constraint).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fockbell
