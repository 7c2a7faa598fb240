#pragma once

#include <vector>

#include "sharpfield/geom.hpp"
#include "sharpfield/optics.hpp"

namespace sharpfield::focus {

using geom::Line3;
using geom::Plane;
using geom::RotationAngles;
using geom::UnitVec3;
using geom::Vec3;

struct FocusSolution {
  RotationAngles front;  // lens tilt/swing
  double S3 = 0.0;       // new third coordinate of the rear standard centre
  Line3 hinge;           // front focal plane ∩ plane of sharp focus ∩ lens-parallel plane
  Line3 scheimpflug;     // lens plane ∩ plane of sharp focus
  UnitVec3 lens_normal;
};

/// Tilt/swing of the front standard and rear translation that bring `sfp` into
/// sharp focus. Coordinates have the optical centre at the origin; only the
/// third coordinate of S is changed.
///
/// Errors: ParallelFocusPlane (sfp parallel to the sensor), HingeTooClose
/// (hinge within f of the lens), SensorNormalDegenerate (n^S_3 == 0).
FocusSolution solve_front_standard(const Plane& sfp, const UnitVec3& sensor_normal, const Vec3& S, double f);

struct ThickFocusSolution {
  FocusSolution solution;
  int iterations = 0;
  std::vector<double> residuals;  // max(|dtheta|, |dphi|) per iteration
};

inline constexpr double kFixedPointTol = 1e-12;
inline constexpr int kFixedPointMaxIter = 20;

/// Fixed-point version for a lens whose optical centre is offset from the
/// front standard rotation centre (cam.lens_offset, expressed in the front
/// standard frame). `sfp` and the result are in global coordinates; the sensor
/// normal comes from cam.rear. Starts from the solution that ignores the offset.
/// Throws NoConvergence after max_iter iterations.
ThickFocusSolution solve_front_standard_thick(const Plane& sfp, const optics::CameraModel& cam,
                                              double tol = kFixedPointTol, int max_iter = kFixedPointMaxIter);

}  // namespace sharpfield::focus
