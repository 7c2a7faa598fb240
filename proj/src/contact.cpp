#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contact_internal.hpp"
#include "sharpfield/error.hpp"

namespace sharpfield::optimize {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void require_angle(double a, const char* what) {
  if (!std::isfinite(a) || !(std::abs(a) < kHalfPi)) {
    std::ostringstream msg;
    msg << what << " must be finite and inside (-pi/2, pi/2), got " << a;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_points(std::span<const Vec3> pts) {
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "no object points");
  for (const auto& p : pts)
    if (!geom::is_finite(p)) throw Error(ErrorCode::InvalidArgument, "object point is not finite");
}

std::string group(const std::vector<int>& g) {
  if (g.empty()) return {};
  const char tag = g.size() == 1 ? 'V' : (g.size() == 2 ? 'E' : 'F');
  const bool wide = std::any_of(g.begin(), g.end(), [](int i) { return i + 1 >= 10; });
  std::ostringstream os;
  os << tag;
  if (wide) os << '(';
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (wide && k > 0) os << '_';
    os << g[k] + 1;
  }
  if (wide) os << ')';
  return os.str();
}

// Vertices within a relative tolerance of the extreme slope.
std::vector<int> attaining(const std::vector<double>& a, double extreme) {
  std::vector<int> out;
  const double tol = 1e-9 * std::max(1.0, std::abs(extreme));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - extreme) <= tol) out.push_back(static_cast<int>(i));
  return out;
}

SlopeExtremes extremes(double s, double co, double sa, double ca, std::span<const Vec3> pts, double f) {
  std::vector<int> behind;
  std::vector<double> a(pts.size());
  const double q = f / s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3& X = pts[i];
    const double y = sa * X.x1 + ca * X.x2;
    if (-s * y + co * X.x3 - f < dof::kBoundaryTol) behind.push_back(static_cast<int>(i));
    a[i] = (y + q) / X.x3;
  }
  if (!behind.empty()) {
    std::ostringstream msg;
    msg << "points not in front of the front focal plane:";
    for (int i : behind) msg << ' ' << i + 1;
    throw Error(ErrorCode::BehindFocalPlane, msg.str());
  }
  SlopeExtremes out;
  out.slopes.a1 = *std::max_element(a.begin(), a.end());
  out.slopes.a2 = *std::min_element(a.begin(), a.end());
  out.upper = attaining(a, out.slopes.a1);
  out.lower = attaining(a, out.slopes.a2);
  return out;
}

}  // namespace

std::string ContactLabel::str() const {
  if (kind == ContactKind::ZeroTilt) return "ZeroTilt";
  return group(first) + group(second);
}

SlopeExtremes slopes_at(double theta, std::span<const Vec3> pts, double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "focal length must be positive");
  if (theta == 0.0) throw Error(ErrorCode::ZeroTilt, "no hinge at zero tilt");
  require_angle(theta, "tilt");
  require_points(pts);
  return extremes(std::sin(theta), std::cos(theta), 0.0, 1.0, pts, f);
}

double n_of_theta(double theta, std::span<const Vec3> pts, const DofParams& params) {
  params.validate();
  require_angle(theta, "tilt");
  require_points(pts);
  if (theta == 0.0) {
    detail::require_in_front(pts, params.f);
    return detail::eval_untilted(pts, params).n;
  }
  return dof::fnumber_tilt(theta, slopes_at(theta, pts, params.f).slopes, params);
}

std::vector<AngularPoint> angular_thetas_2d(std::span<const Vec3> pts, double f) {
  std::vector<AngularPoint> out;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3& Xi = pts[static_cast<std::size_t>(i)];
      const Vec3& Xj = pts[static_cast<std::size_t>(j)];
      AngularPoint ap{i, j, AngularStatus::Finite, 0.0};
      const double dz = Xj.x3 - Xi.x3;
      if (dz == 0.0) {
        ap.status = AngularStatus::EqualDepth;
      } else {
        const double q = (Xj.x2 * Xi.x3 - Xi.x2 * Xj.x3) / dz;
        const double r = f / q;
        if (!std::isfinite(r) || std::abs(r) > 1.0) {
          ap.status = AngularStatus::OutOfRange;
        } else {
          ap.theta = std::asin(r);
        }
      }
      out.push_back(ap);
    }
  }
  return out;
}

std::vector<PairCondition> prop2_condition(std::span<const Vec3> pts, double f) {
  std::vector<PairCondition> out;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3& Xi = pts[static_cast<std::size_t>(i)];
      const Vec3& Xj = pts[static_cast<std::size_t>(j)];
      PairCondition pc{i, j, std::nullopt, false, {}};
      const double d = norm(Xi - Xj);
      if (d == 0.0) {
        pc.reason = "coincident points";
      } else {
        pc.ratio = norm(cross(Xi, Xj)) / d;
        pc.satisfied = *pc.ratio > f;
      }
      out.push_back(std::move(pc));
    }
  }
  return out;
}

TrigPolynomial prop2_coefficients(const Vec3& xi1, const Vec3& xi2, double f) {
  TrigPolynomial p;
  p.b0 = xi1.x2 * xi2.x3 - xi2.x2 * xi1.x3;
  p.b1 = -f * (xi2.x2 - xi1.x2);
  p.b2 = f * (xi2.x3 - xi1.x3);
  p.nonvanishing = p.b0 * p.b0 > p.b1 * p.b1 + p.b2 * p.b2;
  return p;
}

Reduction rotation_reduction(double theta, double phi) {
  require_angle(theta, "tilt");
  require_angle(phi, "swing");
  if (theta == 0.0 && phi == 0.0) throw Error(ErrorCode::ZeroAngles, "no hinge when tilt and swing are both zero");
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sp = std::sin(phi);
  const double s = std::sqrt(sp * sp * ct * ct + st * st);
  const double sgn = theta < 0.0 ? -1.0 : 1.0;
  Reduction r;
  r.psi = std::asin(std::min(1.0, s)) * sgn;
  // sin(alpha) = sin(phi) cos(theta) / sin(psi); cos(alpha) = |sin(theta)| / s.
  r.alpha = std::atan2(sp * ct * sgn, std::abs(st));
  return r;
}

std::vector<Vec3> reduce_points(std::span<const Vec3> pts, const Reduction& r) {
  const geom::Mat3 rz = geom::rotation_about_x3(r.alpha);
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(rz * p);
  return out;
}

double n_of_theta_phi(double theta, double phi, std::span<const Vec3> pts, const DofParams& params) {
  params.validate();
  require_points(pts);
  if (theta == 0.0 && phi == 0.0) return n_of_theta(0.0, pts, params);
  const Reduction r = rotation_reduction(theta, phi);
  const SlopeExtremes e = contact_at(theta, phi, pts, params.f);
  return dof::fnumber_tilt(r.psi, e.slopes, params);
}

SlopeExtremes contact_at(double theta, double phi, std::span<const Vec3> pts, double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "focal length must be positive");
  require_points(pts);
  const Reduction r = rotation_reduction(theta, phi);
  return extremes(std::sin(r.psi), std::cos(r.psi), std::sin(r.alpha), std::cos(r.alpha), pts, f);
}

dof::Wedge wedge_at(double theta, double phi, std::span<const Vec3> pts, const DofParams& params) {
  params.validate();
  const Reduction r = rotation_reduction(theta, phi);
  const SlopeExtremes e = contact_at(theta, phi, pts, params.f);
  const dof::Wedge w = dof::make_tilt_wedge(r.psi, e.slopes, params);
  // Back from the reduced frame: X = Rz(-alpha) X'.
  const geom::Mat3 back = geom::rotation_about_x3(-r.alpha);
  auto turn = [&](const geom::Plane& p) { return geom::Plane(geom::UnitVec3(back * p.normal.vec()), p.offset); };
  return {turn(w.upper), turn(w.lower), Line3(back * w.hinge.point, back * w.hinge.direction), w.fnumber};
}

std::string node_label(double theta, double phi, std::span<const Vec3> pts, double f) {
  if (theta == 0.0 && phi == 0.0) {
    for (const auto& p : pts)
      if (!(p.x3 - f >= dof::kBoundaryTol)) return "behind_focal_plane";
    return "ZeroTilt";
  }
  try {
    const SlopeExtremes e = contact_at(theta, phi, pts, f);
    return detail::label_from_sets(e.upper, e.lower).str();
  } catch (const Error& err) {
    if (err.code() == ErrorCode::BehindFocalPlane) return "behind_focal_plane";
    throw;
  }
}

namespace detail {

TiltEval eval_tilt(double sin_psi, double cos_psi, double sa, double ca, std::span<const Vec3> pts,
                   const DofParams& params) {
  TiltEval ev;
  const double f = params.f;
  const double q = f / sin_psi;
  double a1 = -std::numeric_limits<double>::infinity();
  double a2 = std::numeric_limits<double>::infinity();
  for (const auto& X : pts) {
    const double y = sa * X.x1 + ca * X.x2;
    if (-sin_psi * y + cos_psi * X.x3 - f < dof::kBoundaryTol) return ev;
    const double a = (y + q) / X.x3;
    a1 = std::max(a1, a);
    a2 = std::min(a2, a);
  }
  const double den = 2.0 * cos_psi - (a1 + a2) * sin_psi;
  if (std::abs(den) < 1e-14) return ev;
  const double sgn = sin_psi < 0.0 ? -1.0 : 1.0;
  ev.feasible = true;
  ev.a1 = a1;
  ev.a2 = a2;
  ev.n = sgn * (a1 - a2) * sin_psi / den * params.n_max();
  return ev;
}

TiltEval eval_untilted(std::span<const Vec3> pts, const DofParams& params) {
  TiltEval ev;
  double z1 = -std::numeric_limits<double>::infinity();
  double z2 = std::numeric_limits<double>::infinity();
  for (const auto& X : pts) {
    if (X.x3 - params.f < dof::kBoundaryTol) return ev;
    z1 = std::max(z1, X.x3);
    z2 = std::min(z2, X.x3);
  }
  ev.feasible = true;
  ev.n = dof::fnumber_parallel(z1, z2, params);
  return ev;
}

TiltEval eval_angles(double theta, double phi, std::span<const Vec3> pts, const DofParams& params) {
  if (theta == 0.0 && phi == 0.0) return eval_untilted(pts, params);
  const Reduction r = rotation_reduction(theta, phi);
  return eval_tilt(std::sin(r.psi), std::cos(r.psi), std::sin(r.alpha), std::cos(r.alpha), pts, params);
}

ContactLabel label_from_sets(const std::vector<int>& a, const std::vector<int>& b) {
  ContactLabel l;
  const bool swap = a.size() < b.size() || (a.size() == b.size() && b < a);
  l.first = swap ? b : a;
  l.second = swap ? a : b;
  const std::size_t big = l.first.size();
  const std::size_t small = l.second.size();
  if (big >= 3)
    l.kind = ContactKind::FaceVertex;
  else if (big == 2)
    l.kind = small == 2 ? ContactKind::EdgeEdge : ContactKind::EdgeVertex;
  else
    l.kind = ContactKind::VertexVertex;
  return l;
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::all_of(small.begin(), small.end(),
                     [&](int i) { return std::find(big.begin(), big.end(), i) != big.end(); });
}

bool better(const ContactCandidate& a, const ContactCandidate& b) {
  const double tol = 1e-12 * std::max(1.0, std::abs(b.fnumber));
  if (a.fnumber < b.fnumber - tol) return true;
  if (a.fnumber > b.fnumber + tol) return false;
  if (std::abs(a.theta) != std::abs(b.theta)) return std::abs(a.theta) < std::abs(b.theta);
  if (std::abs(a.phi) != std::abs(b.phi)) return std::abs(a.phi) < std::abs(b.phi);
  return a.label.str() < b.label.str();
}

void pick_best(OptimizeReport& report) {
  const ContactCandidate* best = nullptr;
  for (const auto& c : report.candidates)
    if (c.feasible && (best == nullptr || better(c, *best))) best = &c;
  if (best == nullptr) throw Error(ErrorCode::AllInfeasible, "no feasible contact configuration");
  report.best = *best;
}

void check_wedge(ContactCandidate& cand, std::span<const Vec3> pts, const DofParams& params) {
  if (!cand.feasible || cand.label.kind == ContactKind::ZeroTilt) return;
  const dof::Wedge w = wedge_at(cand.theta, cand.phi, pts, params);
  const geom::UnitVec3 lens = geom::UnitVec3(geom::rotation_matrix({cand.theta, cand.phi}).column(2));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const dof::WedgeVerdict v = dof::wedge_contains(w, pts[i], lens, params.f);
    if (!v.inside()) {
      std::ostringstream msg;
      msg << "point " << i + 1 << " outside the wedge";
      cand.feasible = false;
      cand.infeasibility_reason = msg.str();
      return;
    }
  }
}

void require_in_front(std::span<const Vec3> pts, double f) {
  std::vector<int> behind;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!(pts[i].x3 - f >= dof::kBoundaryTol)) behind.push_back(static_cast<int>(i));
  if (behind.empty()) return;
  std::ostringstream msg;
  msg << "points not beyond the focal length:";
  for (int i : behind) msg << ' ' << i + 1;
  throw Error(ErrorCode::BehindFocalPlane, msg.str());
}

}  // namespace detail

}  // namespace sharpfield::optimize
