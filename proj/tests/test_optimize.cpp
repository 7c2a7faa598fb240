#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sharpfield/error.hpp"
#include "sharpfield/optics.hpp"
#include "sharpfield/optimize.hpp"
#include "support.hpp"

using namespace sharpfield;
using namespace sharpfield::optimize;
using testing::uniform;

namespace {

const DofParams kParams{0.05, 3e-5};

const std::vector<Vec3> kExample1{{0, -1, 1}, {0, 3, 1}, {0, 0, 1.5}};
const std::vector<Vec3> kExample2{{0, -0.1, 0.12}, {0, 0, 0.19}, {0, -0.0525, 0.17}};
const std::vector<Vec3> kExample3{{0, 0, 1}, {0, 0.01, 1.5}, {0, -0.01, 2}};
const std::vector<Vec3> kExample3Half{{0, 0, 1}, {0, 0.005, 1.5}, {0, -0.005, 2}};
const std::vector<Vec3> kTetra{{-0.5, -1, 1}, {-0.5, 3, 1}, {-0.5, 0, 1.5}, {1, 1, 1.5}};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

const ContactCandidate& find(const OptimizeReport& r, const std::string& label) {
  for (const auto& c : r.candidates)
    if (c.label.str() == label) return c;
  FAIL("no candidate " << label);
  return r.best;
}

const PairCondition& condition(const OptimizeReport& r, int i, int j) {
  for (const auto& c : r.conditions)
    if (c.i == i && c.j == j) return c;
  FAIL("no condition for pair " << i << "," << j);
  return r.conditions.front();
}

// Independent evaluation of the best f-number for a lens pose: every plane
// through the hinge images to a plane parallel to the sensor, so the tightest
// wedge is fixed by the extreme image depths of the points.
double n_by_image_depths(double theta, double phi, const std::vector<Vec3>& pts, const DofParams& p) {
  const geom::Mat3 r = geom::rotation_matrix({theta, phi});
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& x : pts) {
    const Vec3 local = r.transposed() * x;
    if (!(local.x3 > p.f)) return kNaN;
    const double t = (r * optics::image_of_point(local, p.f)).x3;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return p.f / p.c * std::abs(hi - lo) / std::abs(hi + lo);
}

struct Scan {
  double n = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  double bound = 0.0;
};

Scan scan_tilt(const std::vector<Vec3>& pts, double lo, double hi, int steps) {
  std::vector<double> v(static_cast<std::size_t>(steps));
  Scan s;
  std::size_t arg = 0;
  for (int k = 0; k < steps; ++k) {
    const double t = lo + (hi - lo) * k / (steps - 1);
    v[static_cast<std::size_t>(k)] = n_by_image_depths(t, 0.0, pts, kParams);
    if (v[static_cast<std::size_t>(k)] < s.n) {
      s.n = v[static_cast<std::size_t>(k)];
      s.theta = t;
      arg = static_cast<std::size_t>(k);
    }
  }
  for (std::size_t k : {arg - 1, arg + 1})
    if (k < v.size() && std::isfinite(v[k])) s.bound = std::max(s.bound, std::abs(v[k] - s.n));
  return s;
}

std::vector<Vec3> random_profile(int n) {
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) pts.push_back({0.0, uniform(-0.5, 0.5), uniform(0.3, 3.0)});
  return pts;
}

}  // namespace

TEST_CASE("pen-sized close-up") {
  const OptimizeReport r = optimize_tilt_2d(kExample2, kParams);
  int angular = 0;
  for (const auto& c : r.candidates) angular += c.label.kind != ContactKind::ZeroTilt;
  CHECK(angular == 3);

  const ContactCandidate& e12 = find(r, "E12V3");
  CHECK(std::abs(e12.theta - 0.185269) < 1e-5);
  CHECK(std::abs(e12.fnumber - 29.49) < 0.01);
  const ContactCandidate& e23 = find(r, "E23V1");
  CHECK(std::abs(e23.theta - 0.100419) < 1e-5);
  CHECK(std::abs(e23.fnumber - 83.67) < 0.01);
  const ContactCandidate& e13 = find(r, "E13V2");
  CHECK(std::abs(e13.theta - 0.235825) < 1e-5);
  CHECK(std::abs(e13.fnumber - 47.04) < 0.01);

  CHECK(r.best.label.str() == "E12V3");
  CHECK(std::abs(r.zero_tilt_value - 193.79) < 0.01);
  CHECK(std::abs(n_of_theta(0.0, kExample2, kParams) - 193.79) < 0.01);

  CHECK(std::abs(*condition(r, 0, 1).ratio - 0.16) < 0.01);
  CHECK(std::abs(*condition(r, 0, 2).ratio - 0.16) < 0.01);
  CHECK(std::abs(*condition(r, 1, 2).ratio - 0.1775527) < 0.01);
  for (const auto& c : r.conditions) CHECK(c.satisfied);
}

TEST_CASE("flat triangle at one metre") {
  const auto ang = angular_thetas_2d(kExample1, 0.05);
  REQUIRE(ang.size() == 3);
  for (const auto& a : ang) {
    if (a.i == 0 && a.j == 1) CHECK(a.status == AngularStatus::EqualDepth);
    if (a.i == 0 && a.j == 2) CHECK(std::abs(a.theta - 0.0166674) < 1e-6);
    if (a.i == 1 && a.j == 2) CHECK(std::abs(a.theta - -0.005555584) < 1e-6);
  }

  const OptimizeReport r = optimize_tilt_2d(kExample1, kParams);
  CHECK(std::abs(find(r, "E13V2").fnumber - 59.5327) < 0.01);
  CHECK(std::abs(find(r, "E23V1").fnumber - 19.3802) < 0.01);
  CHECK(r.best.label.kind == ContactKind::ZeroTilt);
  CHECK(std::abs(r.best.fnumber - 14.4928) < 0.01);
  CHECK(std::abs(*condition(r, 0, 1).ratio - 1.0) < 0.01);
  CHECK(std::abs(*condition(r, 0, 2).ratio - 1.34) < 0.01);
  CHECK(std::abs(*condition(r, 1, 2).ratio - 1.48) < 0.01);
}

TEST_CASE("nearly aligned triangle takes an interior vertex-vertex optimum") {
  const OptimizeReport r = optimize_tilt_2d(kExample3, kParams);
  CHECK(r.best.label.str() == "V1V3");
  CHECK(std::abs(r.best.theta - -0.19135) < 2e-5);
  CHECK(std::abs(r.best.fnumber - 21.23487) < 1e-3);
  CHECK(std::abs(r.zero_tilt_value - 21.645) < 1e-3);
  CHECK(std::abs(find(r, "E23V1").theta - -0.795603) < 1e-6);
  CHECK(std::abs(find(r, "E23V1").fnumber - 27.033) < 1e-3);
  CHECK_FALSE(condition(r, 0, 1).satisfied);
  CHECK_FALSE(condition(r, 0, 2).satisfied);
  CHECK(condition(r, 1, 2).satisfied);
  CHECK(std::abs(*condition(r, 0, 1).ratio - 0.02) < 0.01);
  CHECK(std::abs(*condition(r, 0, 2).ratio - 0.01) < 0.01);
  CHECK(std::abs(*condition(r, 1, 2).ratio - 0.07) < 0.01);

  // Stationary along the segment: both sides are worse.
  for (double d : {1e-3, 1e-2}) {
    CHECK(n_of_theta(r.best.theta - d, kExample3, kParams) > r.best.fnumber);
    CHECK(n_of_theta(r.best.theta + d, kExample3, kParams) > r.best.fnumber);
  }
  const SlopeExtremes e = contact_at(r.best.theta, 0.0, kExample3, 0.05);
  CHECK(e.upper.size() + e.lower.size() == 2);

  const OptimizeReport h = optimize_tilt_2d(kExample3Half, kParams);
  CHECK(h.best.label.str() == "V1V3");
  CHECK(std::abs(h.best.theta - -0.095165) < 2e-5);
  CHECK(std::abs(h.best.fnumber - 21.54328) < 1e-3);
}

TEST_CASE("optimum sits on a triple contact when every pair passes the condition") {
  const OptimizeReport r = optimize_tilt_2d(kExample2, kParams);
  const SlopeExtremes e = contact_at(r.best.theta, 0.0, kExample2, 0.05);
  CHECK(e.upper.size() + e.lower.size() == 3);
}

TEST_CASE("condition ratio matches the trigonometric root test") {
  int n = 0;
  while (n < 100) {
    const Vec3 a{0.0, uniform(-1, 1), uniform(0.2, 3)};
    const Vec3 b{0.0, uniform(-1, 1), uniform(0.2, 3)};
    if (std::abs(a.x3 - b.x3) < 1e-3) continue;
    const double ratio = norm(cross(a, b)) / norm(a - b);
    if (std::abs(ratio - 0.05) < 1e-6) continue;
    const TrigPolynomial p = prop2_coefficients(a, b, 0.05);
    CHECK(p.nonvanishing == (ratio > 0.05));
    CHECK(p.nonvanishing == (p.b0 * p.b0 > p.b1 * p.b1 + p.b2 * p.b2));
    const std::vector<Vec3> two{a, b};
    const auto cond = prop2_condition(two, 0.05);
    REQUIRE(cond.size() == 1);
    CHECK(std::abs(*cond[0].ratio - ratio) < 1e-12 * std::max(1.0, ratio));
    CHECK(cond[0].satisfied == (ratio > 0.05));
    ++n;
  }
}

TEST_CASE("tilt curve agrees with the image-depth construction") {
  for (const auto* pts : {&kExample1, &kExample2, &kExample3}) {
    for (int k = 0; k < 200; ++k) {
      const double t = uniform(-0.8, 0.8);
      const double indep = n_by_image_depths(t, 0.0, *pts, kParams);
      if (!std::isfinite(indep) || std::abs(t) < 1e-9) continue;
      CHECK(std::abs(n_of_theta(t, *pts, kParams) - indep) <= 1e-9 * indep);
    }
  }
}

TEST_CASE("rotation reduction") {
  const Reduction r = rotation_reduction(0.0, 0.100167);
  CHECK(std::abs(std::sin(r.psi) - 0.1) < 1e-6);
  CHECK(std::abs(r.alpha - M_PI / 2) < 1e-12);
  const Reduction t = rotation_reduction(0.2, 0.0);
  CHECK(std::abs(t.psi - 0.2) < 1e-15);
  CHECK(std::abs(t.alpha) < 1e-15);
  CHECK(code_of([] { rotation_reduction(0.0, 0.0); }) == ErrorCode::ZeroAngles);
  CHECK(std::abs(n_of_theta_phi(0.0, 0.100167, kTetra, kParams) - 88.18) < 0.01);
}

TEST_CASE("tilt and swing agree with the image-depth construction") {
  std::vector<std::vector<Vec3>> scenes{kTetra};
  for (int s = 0; s < 4; ++s) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({uniform(-1, 1), uniform(-1, 1), uniform(0.5, 3)});
    scenes.push_back(pts);
  }
  int checked = 0;
  double worst = 0.0;
  while (checked < 100) {
    const auto& pts = scenes[static_cast<std::size_t>(checked) % scenes.size()];
    const double t = uniform(-0.4, 0.4);
    const double p = uniform(-0.4, 0.4);
    const double indep = n_by_image_depths(t, p, pts, kParams);
    if (!std::isfinite(indep)) continue;
    worst = std::max(worst, std::abs(n_of_theta_phi(t, p, pts, kParams) - indep) / indep);
    ++checked;
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("mirrored scene mirrors the tilt curve") {
  for (const auto* pts : {&kExample1, &kExample2, &kExample3}) {
    std::vector<Vec3> mirrored;
    for (const auto& x : *pts) mirrored.push_back({x.x1, -x.x2, x.x3});
    for (double t : {0.01, 0.1, 0.2, 0.3}) {
      const double a = n_of_theta(t, *pts, kParams);
      const double b = n_of_theta(-t, mirrored, kParams);
      CHECK(std::abs(a - b) <= 1e-12 * a);
    }
  }
}

TEST_CASE("enumeration beats an independent scan on random profiles") {
  int done = 0;
  while (done < 30) {
    const std::vector<Vec3> pts = random_profile(3 + done % 4);
    OptimizeReport r;
    try {
      r = optimize_tilt_2d(pts, kParams);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::DegenerateObject);
      continue;
    }
    const Scan s = scan_tilt(pts, -1.2, 1.2, 24001);
    CHECK(r.best.fnumber <= s.n + 1e-9 * s.n);
    CHECK(s.n - r.best.fnumber <= std::max(s.bound, 1e-9));
    CHECK(r.best.fnumber <= kParams.n_max());
    ++done;
  }
}

TEST_CASE("tilt-swing candidates of the tetrahedron") {
  const OptimizeReport r = optimize_tilt_swing(kTetra, kParams);
  CHECK(r.candidates.size() == 8);

  const ContactCandidate& f123 = find(r, "F123V4");
  CHECK(std::abs(f123.theta) < 1e-6);
  CHECK(std::abs(f123.phi - 0.100167) < 1e-5);
  CHECK(std::abs(f123.fnumber - 88.18) < 0.01);

  const ContactCandidate& f134 = find(r, "F134V2");
  CHECK(std::abs(f134.theta - 0.018751) < 1e-5);
  CHECK(std::abs(f134.phi - -0.012503) < 1e-5);

  CHECK_FALSE(find(r, "E12E34").feasible);
  CHECK(std::abs(find(r, "E13E24").theta - 0.0107145) < 1e-6);
  CHECK(std::abs(find(r, "E13E24").phi - 0.0357239) < 1e-6);
  CHECK(std::abs(find(r, "E13E24").fnumber - 37.3406) < 0.01);
  CHECK(std::abs(find(r, "E14E23").fnumber - 15.2474) < 0.01);
  CHECK(std::abs(find(r, "F234V1").fnumber - 18.657) < 0.01);

  CHECK(r.best.label.str() == "F124V3");
  CHECK(std::abs(r.best.phi - 0.0142862) < 1e-6);
  CHECK(std::abs(r.best.fnumber - 12.34699) < 0.01);
  CHECK(std::abs(r.zero_tilt_value - 14.4928) < 0.01);

  // Each feasible candidate touches exactly the elements its label names.
  for (const auto& c : r.candidates) {
    if (!c.feasible || c.label.kind == ContactKind::ZeroTilt) continue;
    const SlopeExtremes e = contact_at(c.theta, c.phi, kTetra, 0.05);
    std::vector<int> named = c.label.first;
    named.insert(named.end(), c.label.second.begin(), c.label.second.end());
    std::vector<int> touched = e.upper;
    touched.insert(touched.end(), e.lower.begin(), e.lower.end());
    std::sort(named.begin(), named.end());
    std::sort(touched.begin(), touched.end());
    CHECK(named == touched);
    CHECK(std::abs(c.fnumber - n_by_image_depths(c.theta, c.phi, kTetra, kParams)) < 1e-9 * c.fnumber);
  }
}

TEST_CASE("hinge candidates of the tetrahedron") {
  const auto h = hinge_candidates_3d(kTetra, 0.05);
  CHECK(h.size() == 7);
  for (const auto& c : h) {
    if (!c.hinge) {
      CHECK_FALSE(c.reason.empty());
      continue;
    }
    for (double t : {-1.0, 1.0}) CHECK(std::abs(c.hinge->at(t).x3) < 1e-12);
  }
}

TEST_CASE("grid oracle agrees on all fixtures") {
  struct Case {
    const std::vector<Vec3>* pts;
    Range theta;
    bool swing;
  };
  const Case cases[] = {{&kExample1, {-0.6, 0.6}, false},
                        {&kExample2, {-0.6, 0.6}, false},
                        {&kExample3, {-1, 1}, false},
                        {&kExample3Half, {-1, 1}, false},
                        {&kTetra, {-0.175, 0.225}, true}};
  for (const auto& c : cases) {
    OptimizeReport r = c.swing ? optimize_tilt_swing(*c.pts, kParams) : optimize_tilt_2d(*c.pts, kParams);
    const GridResult g = c.swing ? grid_oracle_3d(*c.pts, kParams, c.theta, {-0.3225, 0.2775}, 2001)
                                 : grid_oracle_2d(*c.pts, kParams, c.theta, 4001);
    attach_oracle(r, g);
    REQUIRE(r.oracle);
    CHECK(r.oracle->agrees);
    CHECK(r.best.fnumber <= g.n_min + 1e-9);
  }
}

TEST_CASE("tilt curve of the close-up resolves the optimum to the grid bound") {
  const GridResult g = grid_oracle_2d(kExample2, kParams, {0.0, 0.3}, 3001);
  CHECK(std::abs(g.n_min - 29.49) <= g.resolution_bound);
  CHECK(std::abs(g.theta_min - 0.185269) < 2e-4);
}

TEST_CASE("surface export keeps every node") {
  const GridResult g = grid_oracle_3d(kTetra, kParams, {-0.175, 0.225}, {-0.3225, 0.2775}, 41, true);
  CHECK(g.surface.size() == 41u * 41u);
  CHECK(g.surface.front().theta == -0.175);
  CHECK(g.surface[1].phi > g.surface[0].phi);
  for (const auto& node : g.surface) CHECK_FALSE(node.label.empty());
  const OptimizeReport r = optimize_tilt_swing(kTetra, kParams);
  CHECK(r.best.fnumber <= g.n_min + 1e-9);
}

TEST_CASE("input validation") {
  CHECK(code_of([] { optimize_tilt_2d(std::vector<Vec3>{{0, 0, 1}, {0, 1, 2}}, kParams); }) ==
        ErrorCode::DegenerateObject);
  CHECK(code_of([] { optimize_tilt_2d(std::vector<Vec3>{{0, 0, 1}, {0, 1, 1}, {0, 0, 0.03}}, kParams); }) ==
        ErrorCode::BehindFocalPlane);
  CHECK(code_of([] { optimize_tilt_swing(std::vector<Vec3>{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, kParams); }) ==
        ErrorCode::CoplanarPoints);
  CHECK(code_of([] { slopes_at(0.0, kExample2, 0.05); }) == ErrorCode::ZeroTilt);
}

TEST_CASE("interior points do not change the optimum") {
  std::vector<Vec3> pts = kExample2;
  pts.push_back((kExample2[0] + kExample2[1] + kExample2[2]) / 3.0);
  const OptimizeReport r = optimize_tilt_2d(pts, kParams);
  CHECK(r.best.label.str() == "E12V3");
  CHECK(std::abs(r.best.fnumber - 29.49) < 0.01);
  CHECK_FALSE(r.notices.empty());
}

TEST_CASE("labels") {
  CHECK(ContactLabel{ContactKind::FaceVertex, {0, 2, 3}, {1}}.str() == "F134V2");
  CHECK(ContactLabel{ContactKind::EdgeEdge, {0, 2}, {1, 3}}.str() == "E13E24");
  CHECK(ContactLabel{ContactKind::VertexVertex, {0}, {2}}.str() == "V1V3");
  CHECK(ContactLabel{}.str() == "ZeroTilt");
}
