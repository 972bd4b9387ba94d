#pragma once

#include <stdexcept>
#include <string>

namespace hallnum {

// Thrown when a computation would exceed an explicit resource budget
// (group-size cap, prime search bound, pair-scan budget). Distinct from
// invalid input, which uses std::invalid_argument.
class budget_exceeded : public std::runtime_error {
 public:
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hallnum
