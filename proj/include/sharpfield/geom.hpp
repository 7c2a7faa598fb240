#pragma once

#include <array>
#include <cmath>
#include <ostream>

namespace sharpfield::geom {

/// Tolerance for "parallel": ||u x v|| <= kParallelTol * ||u|| ||v||.
inline constexpr double kParallelTol = 1e-12;

struct Vec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x1 += o.x1;
    x2 += o.x2;
    x3 += o.x3;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x1 -= o.x1;
    x2 -= o.x2;
    x3 -= o.x3;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x1 *= s;
    x2 *= s;
    x3 *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x1, -a.x2, -a.x3}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x1 / s, a.x2 / s, a.x3 / s}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

bool is_finite(const Vec3& a);

/// True when u and v are parallel (or either is zero) under the scale-free test.
bool parallel(const Vec3& u, const Vec3& v);

std::ostream& operator<<(std::ostream& os, const Vec3& v);

/// A direction of unit Euclidean length. Construction normalizes its input.
class UnitVec3 {
 public:
  /// Throws InvalidArgument for zero or non-finite input.
  explicit UnitVec3(const Vec3& v);
  UnitVec3(double x1, double x2, double x3) : UnitVec3(Vec3{x1, x2, x3}) {}

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }  // NOLINT(google-explicit-constructor)
  double operator[](int i) const { return v_[i]; }
  double x1() const { return v_.x1; }
  double x2() const { return v_.x2; }
  double x3() const { return v_.x3; }

  UnitVec3 operator-() const { return UnitVec3(-v_); }

 private:
  Vec3 v_;
};

/// { X : <X, normal> = offset }; the offset is a signed distance from the origin.
struct Plane {
  UnitVec3 normal;
  double offset;

  Plane(const UnitVec3& n, double off);

  /// Plane with (not necessarily unit) normal n passing through p.
  static Plane through(const Vec3& n, const Vec3& p);

  double signed_distance(const Vec3& x) const { return dot(x, normal.vec()) - offset; }
};

/// { point + t * direction : t real }.
struct Line3 {
  Vec3 point;
  Vec3 direction;

  Line3(const Vec3& p, const Vec3& d);

  Vec3 at(double t) const { return point + t * direction; }
  double distance_to(const Vec3& x) const;
};

/// Tilt (theta) and swing (phi), radians.
struct RotationAngles {
  double theta = 0.0;
  double phi = 0.0;

  /// True when both angles are finite and strictly inside (-pi/2, pi/2).
  bool valid() const;
};

struct Mat3 {
  std::array<double, 9> m{};  // row-major

  static Mat3 identity();
  double operator()(int r, int c) const { return m[static_cast<std::size_t>(3 * r + c)]; }
  double& operator()(int r, int c) { return m[static_cast<std::size_t>(3 * r + c)]; }

  Vec3 column(int c) const { return {(*this)(0, c), (*this)(1, c), (*this)(2, c)}; }
  Mat3 transposed() const;
  double determinant() const;

  friend Vec3 operator*(const Mat3& a, const Vec3& v);
  friend Mat3 operator*(const Mat3& a, const Mat3& b);
};

/// Alt-azimuth mount rotation. Its third column is the rotated optical axis
/// (-sin(phi) cos(theta), -sin(theta), cos(phi) cos(theta)).
Mat3 rotation_matrix(const RotationAngles& angles);

/// Rotation by `angle` about the third axis (counter-clockwise in the (x1, x2) plane).
Mat3 rotation_about_x3(double angle);

/// Inverse of the third column of rotation_matrix. Requires n3 > 0.
RotationAngles angles_from_normal(const UnitVec3& n);

/// Minimum-norm X with <X, n_a> = b_a and <X, n_b> = b_b.
/// Throws DegenerateSystem when the normals are parallel.
Vec3 minnorm_solve2(const Vec3& n_a, double b_a, const Vec3& n_b, double b_b);

/// Intersection line of two planes; direction is p.normal x q.normal.
/// Throws ParallelPlanes.
Line3 line_from_planes(const Plane& p, const Plane& q);

/// Unit normal n of the plane { <X, n> = f } containing the hinge line, with n3 > 0.
/// Throws NoFrontFacingSolution when the hinge is within f of the origin.
UnitVec3 unit_normal_through_hinge(const Line3& hinge, double f);

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.
/// Eigenvalues ascending; eigenvectors are the matching columns of `vectors`.
struct SymmetricEigen {
  std::array<double, 3> values{};
  Mat3 vectors;
};
SymmetricEigen symmetric_eigen(const Mat3& a);

}  // namespace sharpfield::geom
