#pragma once

#include <array>

#include "sharpfield/geom.hpp"

namespace sharpfield::dof {

using geom::Line3;
using geom::Plane;
using geom::UnitVec3;
using geom::Vec3;

/// Margin below which a point counts as lying on a wedge boundary (metres).
inline constexpr double kBoundaryTol = 1e-9;

struct DofParams {
  double f = 0.05;  // focal length, m
  double c = 3e-5;  // circle-of-confusion diameter, m

  /// Throws InvalidArgument unless 0 < c < f.
  void validate() const;
  /// Largest meaningful f-number, f / c.
  double n_max() const { return f / c; }
};

/// Slopes dX2/dX3 of the two limiting planes in the sensor-aligned frame; a1 >= a2.
struct SlopePair {
  double a1 = 0.0;
  double a2 = 0.0;
};

/// Depth-of-field wedge: everything between `upper` and `lower`, which meet on `hinge`.
/// Interior is { <X, upper.normal> >= upper.offset } ∩ { <X, lower.normal> <= lower.offset }.
struct Wedge {
  Plane upper;
  Plane lower;
  Line3 hinge;
  double fnumber;
};

/// N = f/c (p1 - p2) / (p1 + p2), p1 > p2 > 0 the lens-to-limiting-sensor-plane distances.
double fnumber_scalar(double p1, double p2, const DofParams& params);

/// Lens-to-sensor distance in focus between the two limits: 2 p1 p2 / (p1 + p2).
double harmonic_mean(double p1, double p2);

/// N = f/c |<U1 - U2, nS> / <U1 + U2, nS>| for points U1, U2 on the two limiting sensor planes.
double fnumber_wedge(const Vec3& U1, const Vec3& U2, const UnitVec3& sensor_normal, const DofParams& params);

/// Exact f-number for a pure tilt theta (sensor normal e3, lens at the origin).
double fnumber_tilt(double theta, const SlopePair& a, const DofParams& params);

/// Gradient of fnumber_tilt with respect to (a1, a2, theta).
std::array<double, 3> fnumber_tilt_gradient(double theta, const SlopePair& a, const DofParams& params);

/// Distance from the lens to the sensor plane conjugate to the limiting plane of slope `a`.
double sensor_plane_position(double theta, double a, double f);

/// Untilted case: limiting planes X3 = z1 and X3 = z2 with z1 >= z2 > f.
double fnumber_parallel(double z1, double z2, const DofParams& params);

/// Small-angle, distant-object approximation sign(theta) (a1 - a2) sin(theta) f / (2c).
double approx_fnumber_merklinger(double theta, const SlopePair& a, const DofParams& params);

/// H = f^2 / (N c).
double hyperfocal_distance(double fnumber, const DofParams& params);

/// The tilt-theta wedge with the given slopes, in the sensor-aligned frame.
Wedge make_tilt_wedge(double theta, const SlopePair& a, const DofParams& params);

struct WedgeVerdict {
  bool below_upper = false;
  bool above_lower = false;
  bool in_front = false;
  double upper_margin = 0.0;  // >= 0 inside
  double lower_margin = 0.0;  // >= 0 inside
  double front_margin = 0.0;  // <X, nL> - f, > 0 in front of the front focal plane

  bool inside() const { return below_upper && above_lower && in_front; }
};

/// Margins are signed distances; a boundary point (|margin| <= kBoundaryTol)
/// counts as inside the limiting planes but not in front of the focal plane.
WedgeVerdict wedge_contains(const Wedge& wedge, const Vec3& X, const UnitVec3& lens_normal, double f);

}  // namespace sharpfield::dof
