#pragma once

#include <stdexcept>
#include <string>

namespace cqfc {

// Bad numeric input: non-Hermitian matrix, PMF off the simplex, malformed file.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated an operation contract (infeasible cost bound, mismatched codes).
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a configured size cap; raised before allocation.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cqfc
