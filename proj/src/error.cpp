#include "sharpfield/error.hpp"

namespace sharpfield {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SceneFormat: return "SceneFormat";
    case ErrorCode::NonFrontFacingNormal: return "NonFrontFacingNormal";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::ParallelPlanes: return "ParallelPlanes";
    case ErrorCode::NoFrontFacingSolution: return "NoFrontFacingSolution";
    case ErrorCode::OnFocalPlane: return "OnFocalPlane";
    case ErrorCode::OnRearFocalPlane: return "OnRearFocalPlane";
    case ErrorCode::CollinearPoints: return "CollinearPoints";
    case ErrorCode::ParallelFocusPlane: return "ParallelFocusPlane";
    case ErrorCode::HingeTooClose: return "HingeTooClose";
    case ErrorCode::SensorNormalDegenerate: return "SensorNormalDegenerate";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::BadOrdering: return "BadOrdering";
    case ErrorCode::DegenerateMidplane: return "DegenerateMidplane";
    case ErrorCode::ZeroTilt: return "ZeroTilt";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::BehindFocal: return "BehindFocal";
    case ErrorCode::BehindFocalPlane: return "BehindFocalPlane";
    case ErrorCode::DegenerateObject: return "DegenerateObject";
    case ErrorCode::AllInfeasible: return "AllInfeasible";
    case ErrorCode::ZeroAngles: return "ZeroAngles";
    case ErrorCode::CoplanarPoints: return "CoplanarPoints";
    case ErrorCode::EmptyFeasibleSet: return "EmptyFeasibleSet";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::SceneFormat:
    case ErrorCode::NonFrontFacingNormal:
    case ErrorCode::CollinearPoints:
    case ErrorCode::BadOrdering:
    case ErrorCode::ZeroTilt:
    case ErrorCode::DegenerateObject:
    case ErrorCode::ZeroAngles:
    case ErrorCode::CoplanarPoints:
      return ErrorClass::Validation;
    case ErrorCode::NoFrontFacingSolution:
    case ErrorCode::OnFocalPlane:
    case ErrorCode::OnRearFocalPlane:
    case ErrorCode::ParallelFocusPlane:
    case ErrorCode::HingeTooClose:
    case ErrorCode::BehindFocal:
    case ErrorCode::BehindFocalPlane:
    case ErrorCode::AllInfeasible:
    case ErrorCode::EmptyFeasibleSet:
      return ErrorClass::Infeasible;
    case ErrorCode::DegenerateSystem:
    case ErrorCode::ParallelPlanes:
    case ErrorCode::SensorNormalDegenerate:
    case ErrorCode::NoConvergence:
    case ErrorCode::DegenerateMidplane:
    case ErrorCode::SingularDenominator:
      return ErrorClass::Numerical;
  }
  return ErrorClass::Numerical;
}

}  // namespace sharpfield
