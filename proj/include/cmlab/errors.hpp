#pragma once

#include <stdexcept>
#include <string>

namespace cmlab {

/// Malformed input: wrong shapes, non-finite entries, empty grids, bad counts.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input outside the mathematical domain of an operation (p <= 0, non-PSD, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace cmlab
