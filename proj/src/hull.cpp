#include "sharpfield/hull.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sharpfield/error.hpp"

namespace sharpfield::hull {

using geom::Vec3;

namespace {

double cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist2(const Point2& a, const Point2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

}  // namespace

std::vector<int> gift_wrap_2d(std::span<const Point2> points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) return {};
  double scale = 0.0;
  for (const auto& p : points) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  const double eps = 1e-12 * std::max(scale * scale, 1e-300);

  auto at = [&](int i) -> const Point2& { return points[static_cast<std::size_t>(i)]; };
  int start = 0;
  for (int i = 1; i < n; ++i) {
    if (at(i)[0] < at(start)[0] || (at(i)[0] == at(start)[0] && at(i)[1] < at(start)[1])) start = i;
  }

  std::vector<int> hull;
  int current = start;
  do {
    hull.push_back(current);
    int next = -1;
    for (int i = 0; i < n; ++i) {
      if (i == current || dist2(at(i), at(current)) <= eps) continue;
      if (next < 0) {
        next = i;
        continue;
      }
      const double turn = cross2(at(current), at(next), at(i));
      // i is clockwise of next, or collinear and farther: take it.
      if (turn < -eps || (std::abs(turn) <= eps && dist2(at(i), at(current)) > dist2(at(next), at(current)))) next = i;
    }
    if (next < 0) break;  // all points coincide
    current = next;
    if (static_cast<int>(hull.size()) > n) break;
  } while (current != start);
  return hull;
}

Polytope convex_hull_3d(std::span<const Vec3> points) {
  const int n = static_cast<int>(points.size());
  double scale = 0.0;
  for (const auto& p : points) scale = std::max({scale, std::abs(p.x1), std::abs(p.x2), std::abs(p.x3)});
  const double tol = 1e-9 * std::max(scale, 1.0);
  auto at = [&](int i) -> const Vec3& { return points[static_cast<std::size_t>(i)]; };

  std::set<std::vector<int>> seen;
  Polytope poly;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Vec3 e1 = at(j) - at(i);
        const Vec3 e2 = at(k) - at(i);
        const Vec3 c = cross(e1, e2);
        if (!(norm(c) > 1e-12 * norm(e1) * norm(e2))) continue;
        Vec3 normal = c / norm(c);
        double offset = dot(normal, at(i));
        bool below = true;
        bool above = true;
        std::vector<int> on_plane;
        for (int m = 0; m < n; ++m) {
          const double d = dot(normal, at(m)) - offset;
          if (d > tol) below = false;
          if (d < -tol) above = false;
          if (std::abs(d) <= tol) on_plane.push_back(m);
        }
        if (!below && !above) continue;
        if (below && above) throw Error(ErrorCode::CoplanarPoints, "points do not span a volume");
        if (!seen.insert(on_plane).second) continue;
        if (above) {
          normal = -normal;
          offset = -offset;
        }
        // Wrap the facet boundary in an in-plane basis seen from outside.
        const Vec3 u = e1 / norm(e1);
        const Vec3 v = cross(normal, u);
        std::vector<Point2> flat;
        flat.reserve(on_plane.size());
        for (int m : on_plane) flat.push_back({dot(at(m), u), dot(at(m), v)});
        Facet facet;
        for (int local : gift_wrap_2d(flat)) facet.vertices.push_back(on_plane[static_cast<std::size_t>(local)]);
        facet.normal = normal;
        facet.offset = offset;
        poly.facets.push_back(std::move(facet));
      }
    }
  }
  if (poly.facets.empty()) throw Error(ErrorCode::CoplanarPoints, "points do not span a volume");

  std::set<int> verts;
  std::set<std::pair<int, int>> edges;
  for (const auto& facet : poly.facets) {
    const auto& fv = facet.vertices;
    for (std::size_t m = 0; m < fv.size(); ++m) {
      const int a = fv[m];
      const int b = fv[(m + 1) % fv.size()];
      verts.insert(a);
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  poly.vertices.assign(verts.begin(), verts.end());
  poly.edges.assign(edges.begin(), edges.end());
  return poly;
}

}  // namespace sharpfield::hull
