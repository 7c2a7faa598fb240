#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contact_internal.hpp"
#include "sharpfield/error.hpp"
#include "sharpfield/hull.hpp"

namespace sharpfield::optimize {

namespace {

constexpr double kEdgeGuard = 1e-9;   // keep clear of the feasible-interval ends
constexpr double kGoldenTol = 1e-10;  // rad
constexpr double kInteriorGap = 1e-8; // a fallback minimum this close to a segment end is the angular point
constexpr int kSamples = 64;

struct Interval {
  double lo;
  double hi;
};

// Tilts keeping every point in front of the front focal plane:
// |theta + delta| < acos(f / r) with delta = atan2(x2, x3), r = |(x2, x3)|.
Interval feasible_tilts(std::span<const Vec3> pts, double f) {
  Interval iv{-1.5707963267948966 + kEdgeGuard, 1.5707963267948966 - kEdgeGuard};
  for (const auto& X : pts) {
    const double delta = std::atan2(X.x2, X.x3);
    const double half = std::acos(std::min(1.0, f / std::hypot(X.x2, X.x3)));
    iv.lo = std::max(iv.lo, -delta - half + kEdgeGuard);
    iv.hi = std::min(iv.hi, -delta + half - kEdgeGuard);
  }
  return iv;
}

double safe_n(double theta, std::span<const Vec3> pts, const DofParams& params) {
  const detail::TiltEval ev = detail::eval_angles(theta, 0.0, pts, params);
  return ev.feasible ? ev.n : std::numeric_limits<double>::infinity();
}

// Minimizer of n over [a, b]: coarse sampling, then golden section on the
// bracket around the best sample.
double golden_min(double a, double b, std::span<const Vec3> pts, const DofParams& params) {
  int best = 0;
  double best_n = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kSamples; ++k) {
    const double t = a + (b - a) * k / kSamples;
    const double v = safe_n(t, pts, params);
    if (v < best_n) {
      best_n = v;
      best = k;
    }
  }
  double lo = a + (b - a) * std::max(0, best - 1) / kSamples;
  double hi = a + (b - a) * std::min(kSamples, best + 1) / kSamples;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = safe_n(x1, pts, params);
  double f2 = safe_n(x2, pts, params);
  while (hi - lo > kGoldenTol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = safe_n(x1, pts, params);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = safe_n(x2, pts, params);
    }
  }
  return 0.5 * (lo + hi);
}

ContactCandidate evaluate(double theta, std::span<const Vec3> pts, const DofParams& params) {
  ContactCandidate c;
  c.theta = theta;
  c.feasible = true;
  try {
    const SlopeExtremes e = slopes_at(theta, pts, params.f);
    c.slopes = e.slopes;
    c.label = detail::label_from_sets(e.upper, e.lower);
    c.fnumber = dof::fnumber_tilt(theta, e.slopes, params);
  } catch (const Error& err) {
    c.feasible = false;
    c.fnumber = std::numeric_limits<double>::quiet_NaN();
    c.infeasibility_reason = err.what();
  }
  return c;
}

ContactCandidate zero_tilt(std::span<const Vec3> pts, const DofParams& params) {
  ContactCandidate c;
  c.label.kind = ContactKind::ZeroTilt;
  c.fnumber = n_of_theta(0.0, pts, params);
  c.feasible = true;
  return c;
}

}  // namespace

OptimizeReport optimize_tilt_2d(std::span<const Vec3> pts, const DofParams& params) {
  params.validate();
  if (pts.size() < 3) throw Error(ErrorCode::DegenerateObject, "need at least three points");
  for (const auto& p : pts)
    if (!geom::is_finite(p)) throw Error(ErrorCode::InvalidArgument, "object point is not finite");
  detail::require_in_front(pts, params.f);

  OptimizeReport report;
  std::vector<hull::Point2> flat;
  flat.reserve(pts.size());
  for (const auto& p : pts) flat.push_back({p.x2, p.x3});
  std::vector<int> hull_idx = hull::gift_wrap_2d(flat);
  if (hull_idx.size() < 3) throw Error(ErrorCode::DegenerateObject, "points are collinear in the (x2, x3) plane");
  std::sort(hull_idx.begin(), hull_idx.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::binary_search(hull_idx.begin(), hull_idx.end(), static_cast<int>(i))) {
      std::ostringstream msg;
      msg << "point " << i + 1 << " is not a hull vertex; it cannot limit the wedge";
      report.notices.push_back(msg.str());
    }
  }
  std::vector<Vec3> verts;
  for (int i : hull_idx) verts.push_back(pts[static_cast<std::size_t>(i)]);
  auto global = [&](int local) { return hull_idx[static_cast<std::size_t>(local)]; };

  const Interval iv = feasible_tilts(verts, params.f);
  std::vector<double> breaks{iv.lo, iv.hi};
  if (iv.lo < 0.0 && 0.0 < iv.hi) breaks.push_back(0.0);

  for (const AngularPoint& ap : angular_thetas_2d(verts, params.f)) {
    if (ap.status != AngularStatus::Finite) continue;
    const std::vector<int> pair{global(ap.i), global(ap.j)};
    ContactCandidate c = evaluate(ap.theta, pts, params);
    if (c.feasible) {
      // The pair must share one limiting plane.
      const SlopeExtremes e = slopes_at(ap.theta, pts, params.f);
      const bool up = detail::is_subset(pair, e.upper);
      const bool down = detail::is_subset(pair, e.lower);
      if (up || down) {
        c.label = detail::label_from_sets(up ? e.upper : e.lower, up ? e.lower : e.upper);
      } else {
        c.feasible = false;
        c.infeasibility_reason = "pair not a contact: another vertex lies beyond their common plane";
        c.label = {ContactKind::EdgeVertex, pair, {}};
      }
    } else {
      c.label = {ContactKind::EdgeVertex, pair, {}};
    }
    detail::check_wedge(c, pts, params);
    report.candidates.push_back(std::move(c));
    if (iv.lo < ap.theta && ap.theta < iv.hi) breaks.push_back(ap.theta);
  }

  report.zero_tilt_value = n_of_theta(0.0, pts, params);
  report.candidates.push_back(zero_tilt(pts, params));

  std::vector<PairCondition> conds = prop2_condition(verts, params.f);
  for (auto& pc : conds) {
    pc.i = global(pc.i);
    pc.j = global(pc.j);
  }
  report.conditions = conds;

  const bool smooth_search = std::any_of(conds.begin(), conds.end(), [](const PairCondition& c) { return !c.satisfied; });
  if (smooth_search && iv.lo < iv.hi) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double a = breaks[k];
      const double b = breaks[k + 1];
      if (b - a <= 2.0 * kInteriorGap) continue;
      const double t = golden_min(a, b, verts, params);
      if (t - a <= kInteriorGap || b - t <= kInteriorGap || t == 0.0) continue;
      ContactCandidate c = evaluate(t, pts, params);
      if (!c.feasible) continue;
      detail::check_wedge(c, pts, params);
      report.candidates.push_back(std::move(c));
    }
  }

  detail::pick_best(report);
  return report;
}

}  // namespace sharpfield::optimize
