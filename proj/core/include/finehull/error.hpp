#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finehull {

enum class Errc {
  GapOverflow,
  PlacementFailure,
  PoleHit,
  RegionViolatesEN,
  NoConvergence,
  DomainViolation,
  QuadratureFailure,
  UnsupportedShape,
  BoundVacuous,
  DegenerateSet,
  PreconditionFailure,
  EmptySample,
  NotInEN,
  NoValidWeights,
  ChainNotClosed,
  BranchAtCut,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// Thrown for every contract violation in the library. The code is stable and
/// is what the CLI reports in its machine-readable error output.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace finehull
