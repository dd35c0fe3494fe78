#pragma once

#include <stdexcept>
#include <string>

namespace abelian {

/// Bad input: malformed descriptor, invalid flag value, violated precondition.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field descriptor that cannot be turned into a character group.
class descriptor_error : public usage_error {
 public:
  using usage_error::usage_error;
};

/// The computation itself failed (pole, unreachable precision, infeasible request).
class computation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic would have wrapped.
class overflow_error : public computation_error {
 public:
  using computation_error::computation_error;
};

/// A configured memory, time or enumeration budget would be exceeded.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace abelian
