#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sharpfield/dof.hpp"
#include "sharpfield/geom.hpp"

namespace sharpfield::optimize {

using dof::DofParams;
using dof::SlopePair;
using geom::Line3;
using geom::Vec3;

// Object points live in the sensor-aligned frame: optical centre at the
// origin, sensor normal e3. Indices are 0-based in the API; labels print them
// 1-based. Tilt-only routines use (x2, x3) and ignore x1.

enum class ContactKind { VertexVertex, EdgeVertex, EdgeEdge, FaceVertex, ZeroTilt };

/// Which hull elements touch the limiting planes. `first` is the vertex,
/// edge or face touching one plane and `second` what touches the other;
/// each group is sorted.
struct ContactLabel {
  ContactKind kind = ContactKind::ZeroTilt;
  std::vector<int> first;
  std::vector<int> second;

  /// "E12V3", "F134V2", "E13E24", "V1V3", "ZeroTilt".
  std::string str() const;
  friend bool operator==(const ContactLabel&, const ContactLabel&) = default;
};

/// Tightest wedge through the tilt-theta hinge and the vertices attaining it.
struct SlopeExtremes {
  SlopePair slopes;
  std::vector<int> upper;  // vertices on the upper limiting plane
  std::vector<int> lower;  // vertices on the lower limiting plane
};

/// a_i = (X2 + f / sin(theta)) / X3; a1 = max, a2 = min. Throws ZeroTilt for
/// theta == 0 and BehindFocalPlane (listing the indices) when a point is not
/// in front of the front focal plane.
SlopeExtremes slopes_at(double theta, std::span<const Vec3> pts, double f);

/// Minimum f-number over wedges hinged at the tilt-theta hinge line; theta == 0
/// uses the parallel-plane formula on the depth extremes.
double n_of_theta(double theta, std::span<const Vec3> pts, const DofParams& params);

enum class AngularStatus { Finite, EqualDepth, OutOfRange };

/// Tilt at which the hinge is collinear with vertices i and j.
struct AngularPoint {
  int i = 0;
  int j = 0;
  AngularStatus status = AngularStatus::Finite;
  double theta = 0.0;  // meaningful when status == Finite
};

std::vector<AngularPoint> angular_thetas_2d(std::span<const Vec3> pts, double f);

struct PairCondition {
  int i = 0;
  int j = 0;
  std::optional<double> ratio;  // ||Xi x Xj|| / ||Xi - Xj||
  bool satisfied = false;       // ratio > f
  std::string reason;
};

/// Sufficient condition for the tilt optimum to sit at a triple contact.
std::vector<PairCondition> prop2_condition(std::span<const Vec3> pts, double f);

/// p(theta) = b0 + b1 cos(theta) + b2 sin(theta), the numerator of dn/dtheta
/// along a vertex-vertex contact; it has no root when b0^2 > b1^2 + b2^2.
struct TrigPolynomial {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  bool nonvanishing = false;
};
TrigPolynomial prop2_coefficients(const Vec3& xi1, const Vec3& xi2, double f);

struct Reduction {
  double psi = 0.0;    // equivalent pure tilt
  double alpha = 0.0;  // rotation about e3
};

/// Tilt+swing (theta, phi) is a pure tilt psi once the scene is turned by
/// alpha about e3: X' = Rz(alpha) X, Rz counter-clockwise in (x1, x2).
/// sign(0) is taken as +1. Throws ZeroAngles for (0, 0).
Reduction rotation_reduction(double theta, double phi);

/// Points turned into the reduced frame of rotation_reduction.
std::vector<Vec3> reduce_points(std::span<const Vec3> pts, const Reduction& r);

/// Minimum f-number over wedges hinged at the (theta, phi) hinge line.
double n_of_theta_phi(double theta, double phi, std::span<const Vec3> pts, const DofParams& params);

/// Attained contact and slopes in the reduced frame. (0, 0) has no hinge and
/// is rejected with ZeroAngles.
SlopeExtremes contact_at(double theta, double phi, std::span<const Vec3> pts, double f);

/// The optimal wedge for (theta, phi) in the sensor-aligned frame.
dof::Wedge wedge_at(double theta, double phi, std::span<const Vec3> pts, const DofParams& params);

struct HingeCandidate {
  ContactLabel label;
  std::optional<Line3> hinge;  // in the plane x3 = 0
  std::string reason;          // set when there is no hinge
};

/// Edge-edge and face-vertex hinge lines of the convex hull of `pts`.
/// Throws CoplanarPoints.
std::vector<HingeCandidate> hinge_candidates_3d(std::span<const Vec3> pts, double f);

struct ContactCandidate {
  ContactLabel label;
  double theta = 0.0;
  double phi = 0.0;
  SlopePair slopes;  // reduced frame
  double fnumber = 0.0;
  bool feasible = false;
  std::optional<std::string> infeasibility_reason;
};

struct OracleCheck {
  double theta = 0.0;
  double phi = 0.0;
  double n = 0.0;
  double tolerance = 0.0;  // max(0.05, grid resolution bound)
  bool agrees = false;
};

struct OptimizeReport {
  std::vector<ContactCandidate> candidates;
  ContactCandidate best;
  double zero_tilt_value = 0.0;
  std::optional<OracleCheck> oracle;
  std::vector<PairCondition> conditions;
  std::vector<std::string> notices;
};

/// Minimum f-number tilt. Throws DegenerateObject, BehindFocalPlane, AllInfeasible.
OptimizeReport optimize_tilt_2d(std::span<const Vec3> pts, const DofParams& params);

/// Minimum f-number tilt and swing. Throws CoplanarPoints, BehindFocalPlane, AllInfeasible.
OptimizeReport optimize_tilt_swing(std::span<const Vec3> pts, const DofParams& params);

// ---------------------------------------------------------------------------
// Dense grid oracle

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GridNode {
  double theta = 0.0;
  double phi = 0.0;
  std::optional<double> n;
  std::string label;  // contact label, or reason code when n is empty
};

struct GridResult {
  double theta_min = 0.0;
  double phi_min = 0.0;
  double n_min = 0.0;
  /// Largest change of n between the argmin node and its feasible neighbours.
  double resolution_bound = 0.0;
  std::size_t feasible_nodes = 0;
  std::vector<GridNode> surface;  // theta-major; empty unless requested
};

/// n(theta) on `steps` equally spaced nodes of `theta`, both ends included.
GridResult grid_oracle_2d(std::span<const Vec3> pts, const DofParams& params, Range theta, int steps,
                          bool keep_surface = false);

/// n(theta, phi) on a steps x steps grid.
GridResult grid_oracle_3d(std::span<const Vec3> pts, const DofParams& params, Range theta, Range phi, int steps,
                          bool keep_surface = false);

/// Compares the report's optimum with the grid minimum and stores the verdict.
void attach_oracle(OptimizeReport& report, const GridResult& grid);

/// Contact label of the wedge at a grid node, used for exports.
std::string node_label(double theta, double phi, std::span<const Vec3> pts, double f);

}  // namespace sharpfield::optimize
