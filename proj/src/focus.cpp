#include "sharpfield/focus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sharpfield/error.hpp"

namespace sharpfield::focus {

FocusSolution solve_front_standard(const Plane& sfp, const UnitVec3& sensor_normal, const Vec3& S, double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "focal length must be positive");
  const Vec3& ns = sensor_normal.vec();
  const Vec3& nsf = sfp.normal.vec();
  if (geom::parallel(nsf, ns))
    throw Error(ErrorCode::ParallelFocusPlane, "plane of sharp focus is parallel to the sensor; translate the sensor instead");
  if (std::abs(ns.x3) < 1e-12) throw Error(ErrorCode::SensorNormalDegenerate, "sensor normal has no third component");

  // Step 1: hinge line in the lens-parallel plane.
  const Line3 hinge(geom::minnorm_solve2(ns, 0.0, nsf, sfp.offset), cross(nsf, ns));
  const double distance = norm(hinge.point);
  if (!(distance > f)) {
    std::ostringstream msg;
    msg << "hinge line at " << distance << " m, focal length " << f << " m";
    throw Error(ErrorCode::HingeTooClose, msg.str());
  }

  // Step 2: front focal plane through the hinge.
  const UnitVec3 nl = geom::unit_normal_through_hinge(hinge, f);
  const RotationAngles front = geom::angles_from_normal(nl);

  // Step 3: Scheimpflug line.
  const Vec3 U = geom::minnorm_solve2(nl, 0.0, nsf, dot(hinge.point, nsf));
  const Line3 scheimpflug(U, cross(nl.vec(), nsf));

  // Step 4: move S along x3 only.
  const double S3 = (dot(U, ns) - S.x1 * ns.x1 - S.x2 * ns.x2) / ns.x3;

  return {front, S3, hinge, scheimpflug, nl};
}

namespace {

FocusSolution solve_about(const Plane& sfp, const UnitVec3& ns, const Vec3& S, double f, const Vec3& origin) {
  const Plane local(sfp.normal, sfp.offset - dot(sfp.normal.vec(), origin));
  FocusSolution sol = solve_front_standard(local, ns, S - origin, f);
  sol.S3 += origin.x3;
  sol.hinge.point += origin;
  sol.scheimpflug.point += origin;
  return sol;
}

}  // namespace

ThickFocusSolution solve_front_standard_thick(const Plane& sfp, const optics::CameraModel& cam, double tol,
                                              int max_iter) {
  cam.validate();
  if (!(tol > 0.0) || max_iter < 1) throw Error(ErrorCode::InvalidArgument, "need tol > 0 and max_iter >= 1");
  const UnitVec3 ns = cam.sensor_normal();

  ThickFocusSolution out{solve_about(sfp, ns, cam.S, cam.f, cam.L), 0, {}};
  for (int k = 1; k <= max_iter; ++k) {
    const Vec3 origin = cam.L + geom::rotation_matrix(out.solution.front) * cam.lens_offset;
    FocusSolution next = solve_about(sfp, ns, cam.S, cam.f, origin);
    const double residual = std::max(std::abs(next.front.theta - out.solution.front.theta),
                                     std::abs(next.front.phi - out.solution.front.phi));
    out.solution = next;
    out.residuals.push_back(residual);
    out.iterations = k;
    if (residual < tol) return out;
  }
  std::ostringstream msg;
  msg << "no convergence after " << max_iter << " iterations, last change " << out.residuals.back();
  throw Error(ErrorCode::NoConvergence, msg.str());
}

}  // namespace sharpfield::focus
