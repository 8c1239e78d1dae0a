#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stablepoly {

// Iterative numerics failed to reach the requested accuracy (root finder
// stagnation, exact-division residue above tolerance, ...). Callers must
// surface this; results are never silently truncated.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Text-format failure; `position()` is a 0-based offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace stablepoly
