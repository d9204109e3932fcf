#pragma once

#include <stdexcept>
#include <string>

namespace tightcycle {

// Malformed arguments: out-of-range vertices, bad parameters, unparsable input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A hypothesis of a constructive routine does not hold for the supplied data.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A simple extension could not be performed (wrong class, used vertex, missing edge).
class ExtensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction ran out of free vertices; the host is below its class-size bound.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search exceeded its node budget. Never a claim that no object exists.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tightcycle
