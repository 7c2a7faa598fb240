#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contact_internal.hpp"
#include "sharpfield/error.hpp"

namespace sharpfield::optimize {

namespace {

void require_range(const Range& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo <= r.hi) || !(std::abs(r.lo) < 1.5707963267948966) ||
      !(std::abs(r.hi) < 1.5707963267948966)) {
    std::ostringstream msg;
    msg << what << " range must be finite, ordered and inside (-pi/2, pi/2)";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

std::vector<double> nodes(const Range& r, int steps) {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    double t = r.lo + (r.hi - r.lo) * k / (steps - 1);
    // Snap rounding noise so the untilted node is evaluated exactly.
    if (std::abs(t) <= 1e-15 * std::max(1.0, r.hi - r.lo)) t = 0.0;
    out[static_cast<std::size_t>(k)] = t;
  }
  return out;
}

std::string reason_or_label(double theta, double phi, std::span<const Vec3> pts, double f, bool feasible) {
  if (!feasible) {
    const std::string label = node_label(theta, phi, pts, f);
    return label == "behind_focal_plane" ? label : "singular";
  }
  return node_label(theta, phi, pts, f);
}

// Shared driver over a rows x cols grid of (theta, phi) nodes.
GridResult run_grid(std::span<const Vec3> pts, const DofParams& params, const std::vector<double>& thetas,
                    const std::vector<double>& phis, bool keep_surface) {
  const std::size_t rows = thetas.size();
  const std::size_t cols = phis.size();
  std::vector<double> values(rows * cols, std::numeric_limits<double>::quiet_NaN());
  GridResult g;
  std::size_t best = values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const detail::TiltEval ev = detail::eval_angles(thetas[r], phis[c], pts, params);
      if (!ev.feasible) continue;
      const std::size_t k = r * cols + c;
      values[k] = ev.n;
      ++g.feasible_nodes;
      if (best == values.size() || ev.n < values[best]) best = k;
    }
  }
  if (best == values.size()) throw Error(ErrorCode::EmptyFeasibleSet, "no feasible grid node");
  const std::size_t br = best / cols;
  const std::size_t bc = best % cols;
  g.theta_min = thetas[br];
  g.phi_min = phis[bc];
  g.n_min = values[best];
  auto probe = [&](std::size_t r, std::size_t c) {
    const double v = values[r * cols + c];
    if (!std::isnan(v)) g.resolution_bound = std::max(g.resolution_bound, std::abs(v - g.n_min));
  };
  if (br > 0) probe(br - 1, bc);
  if (br + 1 < rows) probe(br + 1, bc);
  if (bc > 0) probe(br, bc - 1);
  if (bc + 1 < cols) probe(br, bc + 1);

  if (keep_surface) {
    g.surface.reserve(values.size());
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        GridNode node;
        node.theta = thetas[r];
        node.phi = phis[c];
        const double v = values[r * cols + c];
        if (!std::isnan(v)) node.n = v;
        node.label = reason_or_label(node.theta, node.phi, pts, params.f, node.n.has_value());
        g.surface.push_back(std::move(node));
      }
    }
  }
  return g;
}

}  // namespace

GridResult grid_oracle_2d(std::span<const Vec3> pts, const DofParams& params, Range theta, int steps,
                          bool keep_surface) {
  params.validate();
  require_range(theta, "tilt");
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "need at least two grid steps");
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "no object points");
  // Tilt-only: x1 plays no part.
  std::vector<Vec3> flat(pts.begin(), pts.end());
  for (auto& p : flat) p.x1 = 0.0;
  return run_grid(flat, params, nodes(theta, steps), {0.0}, keep_surface);
}

GridResult grid_oracle_3d(std::span<const Vec3> pts, const DofParams& params, Range theta, Range phi, int steps,
                          bool keep_surface) {
  params.validate();
  require_range(theta, "tilt");
  require_range(phi, "swing");
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "need at least two grid steps");
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "no object points");
  return run_grid(pts, params, nodes(theta, steps), nodes(phi, steps), keep_surface);
}

void attach_oracle(OptimizeReport& report, const GridResult& grid) {
  OracleCheck check;
  check.theta = grid.theta_min;
  check.phi = grid.phi_min;
  check.n = grid.n_min;
  check.tolerance = std::max(0.05, grid.resolution_bound);
  check.agrees = std::abs(report.best.fnumber - grid.n_min) <= check.tolerance;
  report.oracle = check;
}

}  // namespace sharpfield::optimize
