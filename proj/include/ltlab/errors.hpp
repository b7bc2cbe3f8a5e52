#pragma once

#include <stdexcept>
#include <string>

namespace ltlab {

/// Raised when an exhaustive search would exceed its configured size bound.
class GuardExceeded : public std::length_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::length_error(what) {}
};

/// Raised by the torsion oracle when the working precision cannot settle a root.
class OracleInconclusive : public std::runtime_error {
 public:
  explicit OracleInconclusive(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ltlab
