#pragma once

#include <stdexcept>
#include <string>

namespace fixlab {

// Raised when a computation produces NaN or infinity. The CLI maps this to
// exit status 3; all other std exceptions map to status 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iteration leaves its domain; carries the offending index.
class DomainEscapeError : public std::runtime_error {
 public:
  DomainEscapeError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace fixlab
