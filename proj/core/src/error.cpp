#include "finehull/error.hpp"

namespace finehull {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::GapOverflow: return "GapOverflow";
    case Errc::PlacementFailure: return "PlacementFailure";
    case Errc::PoleHit: return "PoleHit";
    case Errc::RegionViolatesEN: return "RegionViolatesEN";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::BoundVacuous: return "BoundVacuous";
    case Errc::DegenerateSet: return "DegenerateSet";
    case Errc::PreconditionFailure: return "PreconditionFailure";
    case Errc::EmptySample: return "EmptySample";
    case Errc::NotInEN: return "NotInEN";
    case Errc::NoValidWeights: return "NoValidWeights";
    case Errc::ChainNotClosed: return "ChainNotClosed";
    case Errc::BranchAtCut: return "BranchAtCut";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace finehull
