#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contact_internal.hpp"
#include "sharpfield/error.hpp"
#include "sharpfield/hull.hpp"

namespace sharpfield::optimize {

namespace {

const Vec3 kE3{0.0, 0.0, 1.0};

// Where the line through a and b crosses x3 = 0; empty when it runs parallel.
std::optional<Vec3> trace(const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  if (std::abs(d.x3) <= geom::kParallelTol * norm(d)) return std::nullopt;
  Vec3 t = a - (a.x3 / d.x3) * d;
  t.x3 = 0.0;
  return t;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

HingeCandidate edge_edge(const std::pair<int, int>& e, const std::pair<int, int>& g, std::span<const Vec3> pts) {
  auto at = [&](int i) -> const Vec3& { return pts[static_cast<std::size_t>(i)]; };
  HingeCandidate hc;
  hc.label = {ContactKind::EdgeEdge, {e.first, e.second}, {g.first, g.second}};
  const auto te = trace(at(e.first), at(e.second));
  const auto tg = trace(at(g.first), at(g.second));
  const Vec3 de = at(e.second) - at(e.first);
  const Vec3 dg = at(g.second) - at(g.first);
  double scale = 1.0;
  for (const auto& p : pts) scale = std::max(scale, norm(p));
  if (te && tg) {
    if (norm(*te - *tg) <= 1e-12 * scale) {
      hc.reason = "both edge lines cross the lens-parallel plane at the same point";
    } else {
      hc.hinge = Line3(*te, *tg - *te);
    }
  } else if (te || tg) {
    // One edge runs parallel to the sensor: the hinge is its parallel through the other trace.
    hc.hinge = Line3(te ? *te : *tg, te ? dg : de);
  } else {
    hc.reason = "both edges parallel to the sensor plane; no common hinge";
  }
  return hc;
}

HingeCandidate face_vertex(const hull::Facet& facet, std::span<const Vec3> pts) {
  HingeCandidate hc;
  const std::vector<int> face = sorted(facet.vertices);
  hc.label = {ContactKind::FaceVertex, face, {}};
  if (geom::parallel(facet.normal, kE3)) {
    hc.reason = "face parallel to the sensor plane; covered by the untilted candidate";
    return hc;
  }
  const Vec3 v = cross(facet.normal, kE3);
  const Vec3 w = geom::minnorm_solve2(facet.normal, facet.offset, kE3, 0.0);
  // Planes through the hinge are y = s z, y measured across the hinge in x3 = 0.
  const Vec3 u = cross(kE3, v / norm(v));
  auto slope = [&](const Vec3& X) { return dot(X - w, u) / X.x3; };
  const double s_face = slope(pts[static_cast<std::size_t>(face.front())]);
  double far = 0.0;
  for (const auto& X : pts) far = std::max(far, std::abs(slope(X) - s_face));
  const double tol = 1e-9 * std::max(1.0, far);
  std::vector<int> opposite;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (std::abs(std::abs(slope(pts[i]) - s_face) - far) <= tol) opposite.push_back(static_cast<int>(i));
  hc.label.second = opposite;
  hc.hinge = Line3(w, v);
  return hc;
}

bool disjoint(const std::pair<int, int>& a, const std::pair<int, int>& b) {
  return a.first != b.first && a.first != b.second && a.second != b.first && a.second != b.second;
}

// The attained contact must carry the label's groups on opposite planes.
bool matches(const ContactLabel& label, const SlopeExtremes& e) {
  return (detail::is_subset(label.first, e.upper) && detail::is_subset(label.second, e.lower)) ||
         (detail::is_subset(label.first, e.lower) && detail::is_subset(label.second, e.upper));
}

}  // namespace

std::vector<HingeCandidate> hinge_candidates_3d(std::span<const Vec3> pts, double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "focal length must be positive");
  if (pts.size() < 4) throw Error(ErrorCode::CoplanarPoints, "need at least four points");
  const hull::Polytope poly = hull::convex_hull_3d(pts);
  std::vector<HingeCandidate> out;
  for (std::size_t a = 0; a < poly.edges.size(); ++a)
    for (std::size_t b = a + 1; b < poly.edges.size(); ++b)
      if (disjoint(poly.edges[a], poly.edges[b])) out.push_back(edge_edge(poly.edges[a], poly.edges[b], pts));
  for (const auto& facet : poly.facets) out.push_back(face_vertex(facet, pts));
  return out;
}

OptimizeReport optimize_tilt_swing(std::span<const Vec3> pts, const DofParams& params) {
  params.validate();
  for (const auto& p : pts)
    if (!geom::is_finite(p)) throw Error(ErrorCode::InvalidArgument, "object point is not finite");
  detail::require_in_front(pts, params.f);
  const std::vector<HingeCandidate> hinges = hinge_candidates_3d(pts, params.f);

  OptimizeReport report;
  const hull::Polytope poly = hull::convex_hull_3d(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::binary_search(poly.vertices.begin(), poly.vertices.end(), static_cast<int>(i))) {
      std::ostringstream msg;
      msg << "point " << i + 1 << " is not a hull vertex; it cannot limit the wedge";
      report.notices.push_back(msg.str());
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const HingeCandidate& hc : hinges) {
    ContactCandidate c;
    c.label = hc.label;
    c.theta = nan;
    c.phi = nan;
    c.fnumber = nan;
    if (!hc.hinge) {
      c.infeasibility_reason = hc.reason;
      report.candidates.push_back(std::move(c));
      continue;
    }
    try {
      const geom::UnitVec3 nl = geom::unit_normal_through_hinge(*hc.hinge, params.f);
      const geom::RotationAngles ang = geom::angles_from_normal(nl);
      c.theta = ang.theta + 0.0;
      c.phi = ang.phi + 0.0;
      const SlopeExtremes e = contact_at(c.theta, c.phi, pts, params.f);
      c.slopes = e.slopes;
      c.fnumber = dof::fnumber_tilt(rotation_reduction(c.theta, c.phi).psi, e.slopes, params);
      c.feasible = true;
      if (!matches(c.label, e)) {
        c.feasible = false;
        c.infeasibility_reason = "attained contact " + detail::label_from_sets(e.upper, e.lower).str() +
                                 " differs from the configuration";
      }
    } catch (const Error& err) {
      c.feasible = false;
      c.infeasibility_reason = err.what();
    }
    detail::check_wedge(c, pts, params);
    report.candidates.push_back(std::move(c));
  }

  report.zero_tilt_value = n_of_theta(0.0, pts, params);
  ContactCandidate zero;
  zero.label.kind = ContactKind::ZeroTilt;
  zero.fnumber = report.zero_tilt_value;
  zero.feasible = true;
  report.candidates.push_back(zero);

  std::vector<Vec3> verts;
  for (int i : poly.vertices) verts.push_back(pts[static_cast<std::size_t>(i)]);
  report.conditions = prop2_condition(verts, params.f);
  for (auto& pc : report.conditions) {
    pc.i = poly.vertices[static_cast<std::size_t>(pc.i)];
    pc.j = poly.vertices[static_cast<std::size_t>(pc.j)];
  }

  detail::pick_best(report);
  return report;
}

}  // namespace sharpfield::optimize
