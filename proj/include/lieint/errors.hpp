#pragma once

#include <stdexcept>
#include <string>

namespace lieint {

/// Invalid user input: group strings, weights, cycle types, config files.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The inputs violate a hypothesis of one of the asymptotic formulas
/// (regularity, gcd condition, k-balance, root-lattice membership).
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation would exceed a configured resource cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lieint
