#pragma once

#include <stdexcept>
#include <string>

namespace ricfib {

// A mathematical condition the caller asked for cannot be met: a pole, a
// forbidden seed, a degenerate recurrence, division by zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed textual input (rationals, surds, seed files).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ricfib
