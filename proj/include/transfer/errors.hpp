#pragma once

#include <stdexcept>
#include <string>

namespace transfer {

/// A search or enumeration hit its configured work bound before finishing.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed JSON or CSV input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A constructed index set failed post-verification against its target.
class RealizationError : public std::runtime_error {
 public:
  explicit RealizationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace transfer
