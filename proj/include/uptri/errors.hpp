#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uptri {

/// Raised when an enumeration would exceed its configured element/class budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t requested, std::uint64_t budget)
      : std::runtime_error(what + " (requested " + std::to_string(requested) + ", budget " +
                           std::to_string(budget) + ")"),
        subject_(what),
        requested_(requested),
        budget_(budget) {}

  /// The message without the requested/budget suffix.
  const std::string& subject() const noexcept { return subject_; }
  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::string subject_;
  std::uint64_t requested_;
  std::uint64_t budget_;
};

/// A computed quantity contradicted a mathematical invariant; always a bug, never bad input.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed textual input. `position` is a 0-based character offset when known.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position = 0)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct Budgets {
  std::uint64_t enumeration = std::uint64_t{1} << 20;
  std::uint64_t table_order = std::uint64_t{1} << 15;
  std::uint64_t table_classes = 300;
};

}  // namespace uptri
