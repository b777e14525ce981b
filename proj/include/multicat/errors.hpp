#pragma once

#include <stdexcept>
#include <string>

namespace multicat {

/// Base class for errors caused by invalid mathematical input (bad group
/// tables, inconsistent knot records, malformed descriptors). The CLI maps
/// these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not match an input grammar. `position` is a 0-based
/// character offset (or line number for line-oriented formats).
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Count-family and Exp-family values were combined. Always a wiring bug in
/// a category instance, never a user error.
class FamilyMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A pseudo-distance audit was asked to reason about values that are only
/// upper bounds.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multicat
