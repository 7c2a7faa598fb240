#include "sharpfield/optics.hpp"

#include <cmath>
#include <sstream>

#include "sharpfield/error.hpp"

namespace sharpfield::optics {

using geom::Mat3;
using geom::UnitVec3;

void CameraModel::validate() const {
  if (!(f > 0.0) || !(c > 0.0) || !(c < f)) {
    std::ostringstream msg;
    msg << "need 0 < c < f, got f=" << f << " c=" << c;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!front.valid() || !rear.valid()) throw Error(ErrorCode::InvalidArgument, "standard angles must lie in (-pi/2, pi/2)");
  if (!geom::is_finite(L) || !geom::is_finite(S) || !geom::is_finite(lens_offset) || !geom::is_finite(sensor_offset))
    throw Error(ErrorCode::InvalidArgument, "camera positions must be finite");
}

Vec3 CameraModel::optical_center() const { return L + geom::rotation_matrix(front) * lens_offset; }

UnitVec3 CameraModel::sensor_normal() const { return UnitVec3(geom::rotation_matrix(rear).column(2)); }

UnitVec3 CameraModel::lens_normal() const { return UnitVec3(geom::rotation_matrix(front).column(2)); }

Vec3 image_of_point(const Vec3& x, double f) {
  if (std::abs(x.x3 - f) < 1e-12 * f) throw Error(ErrorCode::OnFocalPlane, "object point on the front focal plane");
  return (f / (f - x.x3)) * x;
}

Vec3 object_of_image(const Vec3& a, double f) {
  if (std::abs(a.x3 + f) < 1e-12 * f) throw Error(ErrorCode::OnRearFocalPlane, "image point on the rear focal plane");
  return (f / (f + a.x3)) * a;
}

Vec3 object_from_sensor(const SensorPoint& p, const CameraModel& cam) {
  cam.validate();
  const Mat3 rl = geom::rotation_matrix(cam.front);
  const Mat3 rs = geom::rotation_matrix(cam.rear);
  const Vec3 origin = cam.optical_center();
  const Vec3 A = cam.S + rs * (cam.sensor_offset + Vec3{p.u, p.v, 0.0});
  const Vec3 a = rl.transposed() * (A - origin);
  const Vec3 x = object_of_image(a, cam.f);
  return origin + rl * x;
}

SensorProjection sensor_projection(const Vec3& X, const CameraModel& cam) {
  cam.validate();
  const Mat3 rl = geom::rotation_matrix(cam.front);
  const Mat3 rs = geom::rotation_matrix(cam.rear);
  const Vec3 origin = cam.optical_center();
  const Vec3 a = image_of_point(rl.transposed() * (X - origin), cam.f);
  const Vec3 A = origin + rl * a;
  const Vec3 local = rs.transposed() * (A - cam.S) - cam.sensor_offset;
  return {{local.x1, local.x2}, local.x3};
}

Plane fit_plane(std::span<const Vec3> points) {
  if (points.size() < 3) throw Error(ErrorCode::CollinearPoints, "need at least 3 points");
  Vec3 centroid{};
  for (const auto& p : points) centroid += p;
  centroid = centroid / static_cast<double>(points.size());

  Mat3 scatter;
  for (const auto& p : points) {
    const Vec3 d = p - centroid;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) scatter(i, j) += d[i] * d[j];
  }
  const auto eig = geom::symmetric_eigen(scatter);
  const double largest = eig.values[2];
  if (!(largest > 0.0) || eig.values[1] <= 1e-12 * largest)
    throw Error(ErrorCode::CollinearPoints, "points do not span a plane");

  Vec3 n = eig.vectors.column(0);
  if (n.x3 < 0.0 || (n.x3 == 0.0 && n.x2 < 0.0)) n = -n;
  return Plane::through(n, centroid);
}

}  // namespace sharpfield::optics
