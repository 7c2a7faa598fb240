#include <doctest.h>

#include <cmath>
#include <vector>

#include "sharpfield/error.hpp"
#include "sharpfield/optics.hpp"
#include "support.hpp"

using namespace sharpfield;
using namespace sharpfield::optics;
using geom::Mat3;
using geom::UnitVec3;
using testing::uniform;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

CameraModel random_camera() {
  CameraModel cam;
  cam.f = uniform(0.03, 0.2);
  cam.c = 3e-5;
  cam.L = testing::random_vec(-0.1, 0.1);
  cam.front = {uniform(-0.3, 0.3), uniform(-0.3, 0.3)};
  cam.rear = {uniform(-0.3, 0.3), uniform(-0.3, 0.3)};
  cam.lens_offset = testing::random_vec(-0.01, 0.01);
  cam.sensor_offset = testing::random_vec(-0.01, 0.01);
  // Sensor roughly one focal length and a bit behind the lens.
  cam.S = cam.L + geom::rotation_matrix(cam.front) * Vec3{0, 0, -cam.f * uniform(1.05, 1.5)};
  return cam;
}

}  // namespace

TEST_CASE("conjugation examples") {
  const Vec3 a = image_of_point({0, 0, 0.1}, 0.05);
  CHECK(testing::max_abs(a - Vec3{0, 0, -0.1}) < 1e-15);
  // Gaussian form -1/a3 + 1/x3 = 1/f solved by hand: a3 = -1 / (1/f - 1/x3).
  const Vec3 b = image_of_point({0, 0, 1}, 0.05);
  CHECK(b.x3 == doctest::Approx(-1.0 / (1.0 / 0.05 - 1.0)).epsilon(1e-14));
  CHECK(b.x3 == doctest::Approx(-0.052632).epsilon(1e-5));
  CHECK(code_of([] { image_of_point({0.1, 0, 0.05}, 0.05); }) == ErrorCode::OnFocalPlane);

  CHECK(testing::max_abs(object_of_image({0, 0, -0.1}, 0.05) - Vec3{0, 0, 0.1}) < 1e-15);
  CHECK(code_of([] { object_of_image({0, 0, -0.05}, 0.05); }) == ErrorCode::OnRearFocalPlane);
}

TEST_CASE("conjugation is an involution and keeps points on their ray") {
  const double f = 0.05;
  for (int k = 0; k < 100; ++k) {
    const Vec3 x{uniform(-1, 1), uniform(-1, 1), uniform(2 * f, 100 * f)};
    const Vec3 a = image_of_point(x, f);
    CHECK(-1.0 / a.x3 + 1.0 / x.x3 == doctest::Approx(1.0 / f).epsilon(1e-12));
    CHECK(norm(cross(x, a)) < 1e-12 * norm(x) * norm(a));
    const Vec3 back = object_of_image(a, f);
    CHECK(norm(back - x) < 1e-10 * norm(x));
  }
}

TEST_CASE("on-axis acquisition at twice the focal length") {
  CameraModel cam;
  cam.S = {0, 0, -0.1};
  const Vec3 X = object_from_sensor({0, 0}, cam);
  CHECK(testing::max_abs(X - Vec3{0, 0, 0.1}) < 1e-15);
}

TEST_CASE("acquisition round trips through the sensor") {
  for (int k = 0; k < 100; ++k) {
    const CameraModel cam = random_camera();
    const Mat3 rl = geom::rotation_matrix(cam.front);
    const Vec3 local{uniform(-0.5, 0.5), uniform(-0.5, 0.5), cam.f * uniform(3, 60)};
    const Vec3 X = cam.optical_center() + rl * local;

    // Independent chain: image in the lens frame, then onto the sensor frame.
    const Vec3 A = cam.optical_center() + rl * image_of_point(local, cam.f);
    const Mat3 rs = geom::rotation_matrix(cam.rear);
    const Vec3 s = rs.transposed() * (A - cam.S) - cam.sensor_offset;

    // Place the sensor through the image so the point is in focus.
    CameraModel focused = cam;
    focused.S = cam.S + s.x3 * rs.column(2);
    const Vec3 back = object_from_sensor({s.x1, s.x2}, focused);
    CHECK(norm(back - X) < 1e-9);

    const SensorProjection p = sensor_projection(X, focused);
    CHECK(std::abs(p.point.u - s.x1) < 1e-9);
    CHECK(std::abs(p.point.v - s.x2) < 1e-9);
    CHECK(std::abs(p.defocus) < 1e-9);
  }
}

TEST_CASE("acquisition through a rear focal plane fails") {
  CameraModel cam;
  cam.S = {0, 0, -0.05};
  CHECK(code_of([&] { object_from_sensor({0, 0}, cam); }) == ErrorCode::OnRearFocalPlane);
}

TEST_CASE("camera validation") {
  CameraModel cam;
  cam.c = 0.06;
  CHECK(code_of([&] { cam.validate(); }) == ErrorCode::InvalidArgument);
  cam.c = 3e-5;
  cam.front = {2.0, 0.0};
  CHECK(code_of([&] { cam.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("plane fit interpolates three points") {
  const std::vector<Vec3> pts{{0, 0, 1.5}, {1, 1, 2}, {0.5, 3, 3}};
  const Plane p = fit_plane(pts);
  for (const auto& x : pts) CHECK(std::abs(p.signed_distance(x)) < 1e-12);
  CHECK(p.normal.x3() >= 0.0);
}

TEST_CASE("plane fit of coplanar points matches any three of them") {
  const std::vector<Vec3> pts{{0, 0, 1.5}, {1, 1, 2}, {-1, -1, 1}, {0.5, 3, 3}};
  const Plane all = fit_plane(pts);
  const Plane three = fit_plane(std::vector<Vec3>{pts[1], pts[2], pts[3]});
  CHECK(testing::max_abs(all.normal.vec() - three.normal.vec()) < 1e-12);
  CHECK(std::abs(all.offset - three.offset) < 1e-12);
}

TEST_CASE("plane fit of a slightly warped square") {
  const double e = 1e-3;
  const std::vector<Vec3> pts{{1, 1, e}, {1, -1, -e}, {-1, -1, e}, {-1, 1, -e}};
  const Plane p = fit_plane(pts);
  CHECK(testing::max_abs(p.normal.vec() - Vec3{0, 0, 1}) < 1e-6);
  CHECK(std::abs(p.offset) < 1e-12);

  // Brute force over sampled normals through the centroid.
  auto cost = [&](const Vec3& n) {
    double s = 0.0;
    for (const auto& x : pts) s += dot(x, n) * dot(x, n);
    return s;
  };
  const double best = cost(p.normal.vec());
  for (int k = 0; k < 2000; ++k) {
    const Vec3 n = UnitVec3(testing::random_vec(-1, 1)).vec();
    CHECK(best <= cost(n) + 1e-15);
  }
}

TEST_CASE("plane fit is equivariant under rigid motions") {
  std::vector<Vec3> pts;
  for (int k = 0; k < 12; ++k) pts.push_back({uniform(-1, 1), uniform(-1, 1), 0.3 * uniform(-1, 1) * 0.01 + 2.0});
  const Plane p = fit_plane(pts);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat3 r = geom::rotation_matrix({uniform(-0.6, 0.6), uniform(-0.6, 0.6)});
    const Vec3 t = testing::random_vec(-2, 2);
    std::vector<Vec3> moved;
    for (const auto& x : pts) moved.push_back(r * x + t);
    const Plane q = fit_plane(moved);
    const Vec3 n = r * p.normal.vec();
    const double sign = dot(n, q.normal.vec()) < 0 ? -1.0 : 1.0;
    CHECK(testing::max_abs(sign * q.normal.vec() - n) < 1e-9);
    CHECK(std::abs(sign * q.offset - (p.offset + dot(n, t))) < 1e-9);
  }
}

TEST_CASE("plane fit rejects collinear input") {
  CHECK(code_of([] { fit_plane(std::vector<Vec3>{{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}); }) == ErrorCode::CollinearPoints);
  CHECK(code_of([] { fit_plane(std::vector<Vec3>{{0, 0, 1}, {1, 1, 1}}); }) == ErrorCode::CollinearPoints);
}
