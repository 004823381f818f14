#pragma once

#include <stdexcept>
#include <string>

namespace opcost {

/// Raised when a scenario document or table schema is malformed.
/// Maps to process exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation is called outside its mathematical domain
/// (rates out of range, undefined thresholds, bad brackets, ...).
/// Maps to process exit code 3.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace opcost
