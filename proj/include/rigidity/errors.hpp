#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

struct NotAUnit : std::domain_error {
  NotAUnit() : std::domain_error("element is not a unit") {}
};

struct RingMismatch : std::invalid_argument {
  RingMismatch() : std::invalid_argument("operands belong to different rings") {}
};

// Raised when an enumeration would exceed its desk-scale cap.
struct GuardExceeded : std::length_error {
  explicit GuardExceeded(const std::string& what) : std::length_error(what) {}
};

struct IncompatibleMap : std::invalid_argument {
  explicit IncompatibleMap(const std::string& what) : std::invalid_argument(what) {}
};

struct TupleNotGP : std::invalid_argument {
  TupleNotGP() : std::invalid_argument("tuple is not in general position") {}
};

struct LevelTooLow : std::domain_error {
  LevelTooLow() : std::domain_error("matrix is not congruent to I to the requested level") {}
};

struct PhiNotWellDefined : std::logic_error {
  explicit PhiNotWellDefined(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rigidity
