#pragma once

#include <span>

#include "sharpfield/geom.hpp"

namespace sharpfield::optics {

using geom::Plane;
using geom::RotationAngles;
using geom::Vec3;

/// View camera parameters, global frame, metres and radians.
///
/// The lens optical centre sits at L + R(front) * lens_offset and the sensor
/// centre at S + R(rear) * sensor_offset; both offsets are zero for a thin lens
/// mounted on its rotation centre.
struct CameraModel {
  double f = 0.05;               // focal length
  double c = 3e-5;               // circle-of-confusion diameter
  Vec3 L{};                      // front standard centre
  Vec3 S{};                      // rear standard centre
  RotationAngles front{};        // lens tilt/swing
  RotationAngles rear{};         // sensor tilt/swing
  Vec3 lens_offset{};            // t^L, front standard frame
  Vec3 sensor_offset{};          // t^S, rear standard frame

  /// Throws InvalidArgument unless 0 < c < f and all angles are valid.
  void validate() const;

  Vec3 optical_center() const;
  geom::UnitVec3 sensor_normal() const;
  geom::UnitVec3 lens_normal() const;
};

struct SensorPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Conjugate of an object point in the local lens frame: a = f / (f - x3) * x.
/// Throws OnFocalPlane when x lies on the front focal plane.
Vec3 image_of_point(const Vec3& x, double f);

/// Inverse conjugation: x = f / (f + a3) * a. Throws OnRearFocalPlane.
Vec3 object_of_image(const Vec3& a, double f);

/// Global coordinates of the object point whose sharp image lies at `p` on the sensor.
Vec3 object_from_sensor(const SensorPoint& p, const CameraModel& cam);

/// Where the image of X meets the sensor frame: (u, v) in the sensor plane and
/// `defocus`, the signed offset of the image point along the sensor normal.
struct SensorProjection {
  SensorPoint point;
  double defocus = 0.0;
};
SensorProjection sensor_projection(const Vec3& X, const CameraModel& cam);

/// Total-least-squares plane. Normal oriented so that n3 >= 0 (ties: n2 >= 0).
/// Throws CollinearPoints for fewer than 3 points or a degenerate scatter.
Plane fit_plane(std::span<const Vec3> points);

}  // namespace sharpfield::optics
