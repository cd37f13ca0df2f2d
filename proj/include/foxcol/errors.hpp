#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foxcol {

// Invalid mathematical input: wrong modulus, malformed diagram, move site
// that does not match the requested pattern, and so on.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A move site whose local pattern does not match the move kind.
class PatternError : public DomainError {
 public:
  explicit PatternError(const std::string& what) : DomainError(what) {}
};

// Integer arithmetic left the representable range. Raised instead of
// wrapping silently.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

// An enumeration would exceed the configured cap. Carries the true count so
// callers can report it without re-deriving.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, unsigned long long true_count)
      : std::runtime_error(what), true_count(true_count) {}
  unsigned long long true_count;
};

// Text input (braid words, JSON payloads) that fails to parse. `position` is
// a 0-based character offset into the offending text where known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace foxcol
