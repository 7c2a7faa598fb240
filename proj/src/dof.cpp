#include "sharpfield/dof.hpp"

#include <cmath>
#include <sstream>

#include "sharpfield/error.hpp"

namespace sharpfield::dof {

namespace {

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

void require_slopes(const SlopePair& a) {
  if (!(a.a1 >= a.a2)) throw Error(ErrorCode::BadOrdering, "slope pair needs a1 >= a2");
}

void require_tilt(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::InvalidArgument, "tilt is not finite");
  if (theta == 0.0) throw Error(ErrorCode::ZeroTilt, "tilt is zero; use the parallel-plane formula");
}

}  // namespace

void DofParams::validate() const {
  if (!(f > 0.0) || !(c > 0.0) || !(c < f)) {
    std::ostringstream msg;
    msg << "need 0 < c < f, got f=" << f << " c=" << c;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

double fnumber_scalar(double p1, double p2, const DofParams& params) {
  params.validate();
  if (!(p2 > 0.0) || !(p1 > p2)) throw Error(ErrorCode::BadOrdering, "need p1 > p2 > 0");
  return params.n_max() * (p1 - p2) / (p1 + p2);
}

double harmonic_mean(double p1, double p2) { return 2.0 * p1 * p2 / (p1 + p2); }

double fnumber_wedge(const Vec3& U1, const Vec3& U2, const UnitVec3& sensor_normal, const DofParams& params) {
  params.validate();
  const double num = dot(U1 - U2, sensor_normal.vec());
  const double den = dot(U1 + U2, sensor_normal.vec());
  if (std::abs(den) <= 1e-15 * (norm(U1) + norm(U2)) || den == 0.0)
    throw Error(ErrorCode::DegenerateMidplane, "limiting sensor planes are symmetric about the lens");
  return params.n_max() * std::abs(num / den);
}

double fnumber_tilt(double theta, const SlopePair& a, const DofParams& params) {
  params.validate();
  require_tilt(theta);
  require_slopes(a);
  const double s = std::sin(theta);
  const double den = 2.0 * std::cos(theta) - (a.a1 + a.a2) * s;
  if (std::abs(den) < 1e-14) throw Error(ErrorCode::SingularDenominator, "limiting plane parallel to the lens plane");
  return sign(theta) * (a.a1 - a.a2) * s / den * params.n_max();
}

std::array<double, 3> fnumber_tilt_gradient(double theta, const SlopePair& a, const DofParams& params) {
  params.validate();
  require_tilt(theta);
  const double cot = std::cos(theta) / std::sin(theta);
  const double s = std::sin(theta);
  const double d = 2.0 * cot - (a.a1 + a.a2);
  const double k = 2.0 * sign(theta) / (d * d) * params.n_max();
  return {k * (cot - a.a2), k * (a.a1 - cot), k * (a.a1 - a.a2) / (s * s)};
}

double sensor_plane_position(double theta, double a, double f) {
  return f / (a * std::sin(theta) - std::cos(theta));
}

double fnumber_parallel(double z1, double z2, const DofParams& params) {
  params.validate();
  if (!(z2 > params.f)) throw Error(ErrorCode::BehindFocal, "nearest depth is not in front of the focal plane");
  if (!(z1 >= z2)) throw Error(ErrorCode::BadOrdering, "need z1 >= z2");
  const double num = std::abs(1.0 / z2 - 1.0 / z1);
  const double den = std::abs(1.0 / z1 + 1.0 / z2 - 2.0 / params.f);
  return params.n_max() * num / den;
}

double approx_fnumber_merklinger(double theta, const SlopePair& a, const DofParams& params) {
  params.validate();
  require_tilt(theta);
  return sign(theta) * (a.a1 - a.a2) * std::sin(theta) * params.f / (2.0 * params.c);
}

double hyperfocal_distance(double fnumber, const DofParams& params) {
  params.validate();
  if (!(fnumber > 0.0)) throw Error(ErrorCode::InvalidArgument, "f-number must be positive");
  return params.f * params.f / (fnumber * params.c);
}

Wedge make_tilt_wedge(double theta, const SlopePair& a, const DofParams& params) {
  const double n = fnumber_tilt(theta, a, params);
  const Vec3 w{0.0, -params.f / std::sin(theta), 0.0};
  return {Plane::through({0.0, -1.0, a.a1}, w), Plane::through({0.0, -1.0, a.a2}, w), Line3(w, {1.0, 0.0, 0.0}), n};
}

WedgeVerdict wedge_contains(const Wedge& wedge, const Vec3& X, const UnitVec3& lens_normal, double f) {
  WedgeVerdict v;
  v.upper_margin = wedge.upper.signed_distance(X);
  v.lower_margin = -wedge.lower.signed_distance(X);
  v.front_margin = dot(X, lens_normal.vec()) - f;
  v.below_upper = v.upper_margin >= -kBoundaryTol;
  v.above_lower = v.lower_margin >= -kBoundaryTol;
  v.in_front = v.front_margin >= kBoundaryTol;
  return v;
}

}  // namespace sharpfield::dof
