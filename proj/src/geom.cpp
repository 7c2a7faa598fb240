#include "sharpfield/geom.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "sharpfield/error.hpp"

namespace sharpfield::geom {

bool is_finite(const Vec3& a) { return std::isfinite(a.x1) && std::isfinite(a.x2) && std::isfinite(a.x3); }

bool parallel(const Vec3& u, const Vec3& v) { return norm(cross(u, v)) <= kParallelTol * norm(u) * norm(v); }

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x1 << ", " << v.x2 << ", " << v.x3 << ')';
}

UnitVec3::UnitVec3(const Vec3& v) {
  const double n = norm(v);
  if (!is_finite(v) || !(n > 0.0)) {
    std::ostringstream msg;
    msg << "cannot normalize " << v;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  v_ = v / n;
}

Plane::Plane(const UnitVec3& n, double off) : normal(n), offset(off) {
  if (!std::isfinite(off)) throw Error(ErrorCode::InvalidArgument, "plane offset is not finite");
}

Plane Plane::through(const Vec3& n, const Vec3& p) {
  UnitVec3 u(n);
  return Plane(u, dot(u.vec(), p));
}

Line3::Line3(const Vec3& p, const Vec3& d) : point(p), direction(d) {
  if (!is_finite(p) || !is_finite(d)) throw Error(ErrorCode::InvalidArgument, "line is not finite");
  if (!(norm(d) > 1e-12)) throw Error(ErrorCode::InvalidArgument, "line direction is zero");
}

double Line3::distance_to(const Vec3& x) const { return norm(cross(x - point, direction)) / norm(direction); }

bool RotationAngles::valid() const {
  constexpr double half_pi = std::numbers::pi / 2.0;
  return std::isfinite(theta) && std::isfinite(phi) && std::abs(theta) < half_pi && std::abs(phi) < half_pi;
}

Mat3 Mat3::identity() {
  Mat3 r;
  r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

double Mat3::determinant() const {
  const Mat3& a = *this;
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a(0, 0) * v.x1 + a(0, 1) * v.x2 + a(0, 2) * v.x3, a(1, 0) * v.x1 + a(1, 1) * v.x2 + a(1, 2) * v.x3,
          a(2, 0) * v.x1 + a(2, 1) * v.x2 + a(2, 2) * v.x3};
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

Mat3 rotation_matrix(const RotationAngles& angles) {
  const double ct = std::cos(angles.theta);
  const double st = std::sin(angles.theta);
  const double cp = std::cos(angles.phi);
  const double sp = std::sin(angles.phi);
  Mat3 r;
  r.m = {cp, -sp * st, -sp * ct,  //
         0.0, ct, -st,            //
         sp, cp * st, cp * ct};
  return r;
}

Mat3 rotation_about_x3(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  r.m = {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0};
  return r;
}

RotationAngles angles_from_normal(const UnitVec3& n) {
  if (!(n.x3() > 0.0)) throw Error(ErrorCode::NonFrontFacingNormal, "normal must have a positive third component");
  const double theta = -std::asin(std::clamp(n.x2(), -1.0, 1.0));
  const double phi = -std::asin(std::clamp(n.x1() / std::cos(theta), -1.0, 1.0));
  return {theta, phi};
}

Vec3 minnorm_solve2(const Vec3& n_a, double b_a, const Vec3& n_b, double b_b) {
  if (parallel(n_a, n_b)) throw Error(ErrorCode::DegenerateSystem, "normals are parallel");
  // X = alpha n_a + beta n_b; solve the 2x2 Gram system.
  const double g11 = dot(n_a, n_a);
  const double g12 = dot(n_a, n_b);
  const double g22 = dot(n_b, n_b);
  const double det = g11 * g22 - g12 * g12;
  const double alpha = (b_a * g22 - b_b * g12) / det;
  const double beta = (b_b * g11 - b_a * g12) / det;
  return alpha * n_a + beta * n_b;
}

Line3 line_from_planes(const Plane& p, const Plane& q) {
  if (parallel(p.normal, q.normal)) throw Error(ErrorCode::ParallelPlanes, "planes do not intersect in a line");
  return Line3(minnorm_solve2(p.normal, p.offset, q.normal, q.offset), cross(p.normal, q.normal));
}

UnitVec3 unit_normal_through_hinge(const Line3& hinge, double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "focal length must be positive");
  const Vec3& w = hinge.point;
  const Vec3& v = hinge.direction;
  const double distance = norm(cross(w, v)) / norm(v);
  if (!(distance > f)) {
    std::ostringstream msg;
    msg << "hinge at distance " << distance << " from the lens centre, focal length " << f;
    throw Error(ErrorCode::NoFrontFacingSolution, msg.str());
  }
  // Solutions of <W,n> = f, <V,n> = 0 are n = vt + t * wt; pick t so that |n| = 1.
  const Vec3 vt = minnorm_solve2(w, f, v, 0.0);
  const Vec3 wt = cross(v, w);
  const double a = dot(wt, wt);
  const double b = dot(wt, vt);
  const double c = dot(vt, vt) - 1.0;
  const double disc = b * b - a * c;
  if (disc < 0.0) throw Error(ErrorCode::NoFrontFacingSolution, "no unit normal through the hinge");
  const double root = std::sqrt(disc);
  const Vec3 n_plus = vt + ((-b + root) / a) * wt;
  const Vec3 n_minus = vt + ((-b - root) / a) * wt;
  const Vec3* best = nullptr;
  for (const Vec3* cand : {&n_plus, &n_minus}) {
    if (cand->x3 > 0.0 && (best == nullptr || cand->x3 > best->x3)) best = cand;
  }
  if (best == nullptr) throw Error(ErrorCode::NoFrontFacingSolution, "neither root faces forward");
  return UnitVec3(*best);
}

SymmetricEigen symmetric_eigen(const Mat3& input) {
  Mat3 a = input;
  Mat3 v = Mat3::identity();
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    double scale = 0.0;
    for (double x : a.m) scale = std::max(scale, std::abs(x));
    if (off <= 1e-30 * scale * scale || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  for (int k = 0; k < 3; ++k) {
    out.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    for (int r = 0; r < 3; ++r) out.vectors(r, k) = v(r, order[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace sharpfield::geom
