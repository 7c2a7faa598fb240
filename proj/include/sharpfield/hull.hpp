#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "sharpfield/geom.hpp"

namespace sharpfield::hull {

using Point2 = std::array<double, 2>;

/// Jarvis march. Returns indices of the hull vertices in counter-clockwise
/// order, without points lying in the middle of a hull edge. Returns fewer
/// than 3 indices when the input is collinear.
std::vector<int> gift_wrap_2d(std::span<const Point2> points);

struct Facet {
  std::vector<int> vertices;  // counter-clockwise seen from outside
  geom::Vec3 normal;          // outward, unit
  double offset = 0.0;        // <X, normal> = offset on the facet
};

struct Polytope {
  std::vector<int> vertices;                // sorted
  std::vector<std::pair<int, int>> edges;   // (i < j), sorted
  std::vector<Facet> facets;
};

/// Convex hull of a small 3D point set (tens of points). Every facet is a
/// maximal coplanar face; its boundary is gift-wrapped in the facet plane.
/// Throws CoplanarPoints when the points do not span a volume.
Polytope convex_hull_3d(std::span<const geom::Vec3> points);

}  // namespace sharpfield::hull
