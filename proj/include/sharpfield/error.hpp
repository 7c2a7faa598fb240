#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sharpfield {

enum class ErrorCode {
  InvalidArgument,
  SceneFormat,
  // geom
  NonFrontFacingNormal,
  DegenerateSystem,
  ParallelPlanes,
  NoFrontFacingSolution,
  // optics
  OnFocalPlane,
  OnRearFocalPlane,
  CollinearPoints,
  // focus
  ParallelFocusPlane,
  HingeTooClose,
  SensorNormalDegenerate,
  NoConvergence,
  // dof
  BadOrdering,
  DegenerateMidplane,
  ZeroTilt,
  SingularDenominator,
  BehindFocal,
  // optimize
  BehindFocalPlane,
  DegenerateObject,
  AllInfeasible,
  ZeroAngles,
  CoplanarPoints,
  EmptyFeasibleSet,
};

std::string_view to_string(ErrorCode code);

/// Coarse failure class, used for CLI exit codes.
enum class ErrorClass { Validation, Infeasible, Numerical };

ErrorClass classify(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sharpfield
