#pragma once

#include <stdexcept>
#include <string>

namespace hs {

enum class ErrorKind {
  InvalidArgument,
  NonUpperHalfPlane,
  ForbiddenEnergy,
  NotUnimodular,
  ExcludedAngle,
  SameExtension,
  NotNormalized,
  DegenerateSpectrum,
  DegenerateDenominator,
  SeedExhausted,
  CapacityExceeded,
};

const char* to_string(ErrorKind kind) noexcept;

// Numerical errors are the ones a caller can hit with well-formed input
// (a forbidden energy, a pole of a parameter map). Everything else is a
// validation error.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hs
