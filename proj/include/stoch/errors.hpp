#pragma once

#include <stdexcept>
#include <string>

namespace stoch {

/// Input outside the mathematical domain of an operation (bad index, weight mismatch, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Request exceeds a configured size guard (see capacity_limit()).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed structured data: shapes that do not match, unvalidated representations.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Returns `fallback`, or the value of CONTINGENCY_MAX_N when that is set and larger.
int capacity_limit(int fallback);

/// Throws CapacityError when n exceeds capacity_limit(fallback).
void require_capacity(int n, int fallback, const char* what);

}  // namespace stoch
