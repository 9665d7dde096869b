#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bootperc {

/// Malformed parameters, out-of-range ids, or inconsistent dimensions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search gave up after exhausting its configured number of closure calls.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t budget)
      : std::runtime_error("search budget of " + std::to_string(budget) +
                           " closure calls exceeded"),
        budget_(budget) {}

  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

/// A lower-bound certificate failed one of its exact checks, or a search
/// found a percolating set below a certified bound.
class CertificateInvalid : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bootperc
