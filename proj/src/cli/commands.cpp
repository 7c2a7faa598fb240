#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sharpfield/cli.hpp"
#include "sharpfield/error.hpp"

namespace sharpfield::cli {

using nlohmann::json;
using optimize::GridResult;
using optimize::OptimizeReport;

namespace {

constexpr double kDeg = 57.29577951308232;
constexpr int kSurfaceSteps = 401;

std::string resolve_mode(const Options& opt, const Scene& scene) {
  if (!opt.mode.empty()) return opt.mode;
  return scene.mode.value_or("tilt");
}

OptimizeReport run_optimize(const std::string& mode, const std::vector<Vec3>& pts, const dof::DofParams& params) {
  if (mode == "tilt") return optimize::optimize_tilt_2d(pts, params);
  if (mode == "tilt-swing") return optimize::optimize_tilt_swing(pts, params);
  throw Error(ErrorCode::InvalidArgument, "mode must be tilt or tilt-swing, got '" + mode + "'");
}

GridResult run_oracle(const std::string& mode, const Scene& scene, const std::vector<Vec3>& pts, const Options& opt,
                      bool keep_surface) {
  OracleSpec spec = scene.oracle;
  if (!opt.range.empty()) {
    if (opt.range.size() >= 2) spec.theta = {opt.range[0], opt.range[1]};
    if (opt.range.size() == 4) spec.phi = {opt.range[2], opt.range[3]};
  }
  if (opt.steps) spec.steps = *opt.steps;
  if (mode == "tilt") return optimize::grid_oracle_2d(pts, scene.params(), spec.theta, spec.steps, keep_surface);
  return optimize::grid_oracle_3d(pts, scene.params(), spec.theta, spec.phi, spec.steps, keep_surface);
}

std::string vec_text(const Vec3& v) { return "(" + fmt6(v.x1) + ", " + fmt6(v.x2) + ", " + fmt6(v.x3) + ")"; }

json vec_json(const Vec3& v) { return json::array({v.x1, v.x2, v.x3}); }

// Writes through `body` to --out, or to `out` when no path is given.
void emit(const Options& opt, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (opt.out_path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt.out_path);
  body(file);
  if (!file) throw Error(ErrorCode::InvalidArgument, "write failed for " + opt.out_path);
}

focus::ThickFocusSolution solve_focus(const Scene& scene) {
  const geom::Plane sfp = optics::fit_plane(scene.points);
  return focus::solve_front_standard_thick(sfp, scene.camera());
}

bool has_lens_offset(const Scene& scene) { return norm(scene.lens_offset_m) > 0.0; }

// ---------------------------------------------------------------------------
// check

struct Evaluator {
  const Scene& scene;
  std::string mode;
  std::vector<Vec3> pts;
  const Options& opt;
  std::optional<OptimizeReport> report_;
  std::optional<GridResult> grid_;
  std::optional<focus::ThickFocusSolution> focus_;

  const OptimizeReport& report() {
    if (!report_) report_ = run_optimize(mode, pts, scene.params());
    return *report_;
  }
  const GridResult& grid() {
    if (!grid_) {
      report();
      grid_ = run_oracle(mode, scene, pts, opt, false);
      optimize::attach_oracle(*report_, *grid_);
    }
    return *grid_;
  }
  const focus::ThickFocusSolution& focus() {
    if (!focus_) focus_ = solve_focus(scene);
    return *focus_;
  }
  const optimize::ContactCandidate& candidate(const std::string& label) {
    for (const auto& c : report().candidates)
      if (c.label.str() == label) return c;
    throw Error(ErrorCode::InvalidArgument, "no candidate labelled " + label);
  }

  json value(const json& row) {
    const std::string q = row.at("quantity").get<std::string>();
    auto pair = [&]() {
      const auto p = row.at("pair");
      return std::pair<int, int>{p.at(0).get<int>() - 1, p.at(1).get<int>() - 1};
    };
    if (q == "best_label") return report().best.label.str();
    if (q == "best_theta") return report().best.theta;
    if (q == "best_phi") return report().best.phi;
    if (q == "best_fnumber") return report().best.fnumber;
    if (q == "zero_tilt") return report().zero_tilt_value;
    if (q == "candidate_count") {
      int n = 0;
      for (const auto& c : report().candidates)
        if (c.label.kind != optimize::ContactKind::ZeroTilt) ++n;
      return n;
    }
    if (q == "candidate_theta") return candidate(row.at("label")).theta;
    if (q == "candidate_phi") return candidate(row.at("label")).phi;
    if (q == "candidate_fnumber") return candidate(row.at("label")).fnumber;
    if (q == "candidate_feasible") return candidate(row.at("label")).feasible;
    if (q == "angular_theta") {
      const auto [i, j] = pair();
      for (const auto& ap : optimize::angular_thetas_2d(pts, scene.focal_length_m)) {
        if (ap.i != i || ap.j != j) continue;
        if (ap.status == optimize::AngularStatus::Finite) return ap.theta;
        return ap.status == optimize::AngularStatus::EqualDepth ? "equal-depth" : "out-of-range";
      }
      throw Error(ErrorCode::InvalidArgument, "pair out of range");
    }
    if (q == "condition_ratio" || q == "condition_satisfied") {
      const auto [i, j] = pair();
      for (const auto& pc : optimize::prop2_condition(pts, scene.focal_length_m)) {
        if (pc.i != i || pc.j != j) continue;
        if (q == "condition_satisfied") return pc.satisfied;
        return pc.ratio ? json(*pc.ratio) : json(nullptr);
      }
      throw Error(ErrorCode::InvalidArgument, "pair out of range");
    }
    if (q == "n_of_theta") {
      const double th = row.at("theta").get<double>();
      const double ph = row.value("phi", 0.0);
      return optimize::n_of_theta_phi(th, ph, pts, scene.params());
    }
    if (q == "oracle_agrees") {
      grid();
      return report_->oracle->agrees;
    }
    if (q == "oracle_n") return grid().n_min;
    if (q == "focus_theta") return focus().solution.front.theta;
    if (q == "focus_phi") return focus().solution.front.phi;
    if (q == "focus_S3") return focus().solution.S3;
    if (q == "focus_iterations") return focus().iterations;
    throw Error(ErrorCode::InvalidArgument, "unknown quantity '" + q + "'");
  }
};

std::string show(const json& v) {
  if (v.is_number()) return fmt6(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Numbers match within the tolerance (or stay at most `expected` for "at_most"
// rows); everything else must be equal.
bool matches(const json& actual, const json& expected, double tol, bool at_most) {
  if (actual.is_number() && expected.is_number()) {
    const double a = actual.get<double>();
    const double e = expected.get<double>();
    if (!std::isfinite(a)) return false;
    return at_most ? a <= e + tol : std::abs(a - e) <= tol;
  }
  return actual == expected;
}

std::string default_expect_path(const std::string& scene_path) {
  const std::string ext = ".json";
  if (scene_path.size() > ext.size() && scene_path.compare(scene_path.size() - ext.size(), ext.size(), ext) == 0)
    return scene_path.substr(0, scene_path.size() - ext.size()) + ".expect.json";
  return scene_path + ".expect.json";
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "error: SceneFormat: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace

int cmd_acquire(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opt.uv) throw Error(ErrorCode::InvalidArgument, "acquire needs --uv U V");
    const Scene scene = load_scene(opt.scene_path);
    const Vec3 X = optics::object_from_sensor({(*opt.uv)[0], (*opt.uv)[1]}, scene.camera());
    if (opt.json)
      out << json{{"point", vec_json(X)}}.dump(2) << '\n';
    else
      out << "X = " << vec_text(X) << '\n';
    return int{kExitOk};
  });
}

int cmd_focus_plane(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(opt.scene_path);
    const geom::Plane sfp = optics::fit_plane(scene.points);
    const focus::ThickFocusSolution thick = focus::solve_front_standard_thick(sfp, scene.camera());
    const focus::FocusSolution& s = thick.solution;
    if (opt.json) {
      json j;
      j["plane"] = {{"normal", vec_json(sfp.normal.vec())}, {"offset", sfp.offset}};
      j["theta"] = s.front.theta;
      j["phi"] = s.front.phi;
      j["S3"] = s.S3;
      j["lens_normal"] = vec_json(s.lens_normal.vec());
      j["hinge"] = {{"point", vec_json(s.hinge.point)}, {"direction", vec_json(s.hinge.direction)}};
      j["scheimpflug"] = {{"point", vec_json(s.scheimpflug.point)}, {"direction", vec_json(s.scheimpflug.direction)}};
      j["iterations"] = thick.iterations;
      j["residuals"] = thick.residuals;
      out << j.dump(2) << '\n';
    } else {
      out << "plane: normal " << vec_text(sfp.normal.vec()) << " offset " << fmt6(sfp.offset) << '\n';
      out << "theta: " << fmt6(s.front.theta) << " rad (" << fmt6(s.front.theta * kDeg) << " deg)\n";
      out << "phi: " << fmt6(s.front.phi) << " rad (" << fmt6(s.front.phi * kDeg) << " deg)\n";
      out << "S3: " << fmt6(s.S3) << '\n';
      out << "hinge: point " << vec_text(s.hinge.point) << " direction " << vec_text(s.hinge.direction) << '\n';
      out << "scheimpflug: point " << vec_text(s.scheimpflug.point) << " direction "
          << vec_text(s.scheimpflug.direction) << '\n';
      if (has_lens_offset(scene)) out << "iterations: " << thick.iterations << '\n';
    }
    return int{kExitOk};
  });
}

int cmd_optimize(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(opt.scene_path);
    const std::string mode = resolve_mode(opt, scene);
    const std::vector<Vec3> pts = scene.aligned_points();
    OptimizeReport report = run_optimize(mode, pts, scene.params());
    std::optional<GridResult> grid;
    if (opt.oracle) {
      grid = run_oracle(mode, scene, pts, opt, false);
      optimize::attach_oracle(report, *grid);
    }
    emit(opt, out, [&](std::ostream& os) {
      if (opt.json)
        os << report_json(report, mode, grid) << '\n';
      else
        print_report_table(os, report);
    });
    if (report.oracle && !report.oracle->agrees) {
      err << "error: grid oracle minimum " << fmt6(report.oracle->n) << " differs from the enumerated optimum "
          << fmt6(report.best.fnumber) << '\n';
      return int{kExitNumerical};
    }
    return int{kExitOk};
  });
}

int cmd_curve(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opt.range.empty() && opt.range.size() != 2) throw Error(ErrorCode::InvalidArgument, "curve --range takes LO HI");
    const Scene scene = load_scene(opt.scene_path);
    const GridResult grid = run_oracle("tilt", scene, scene.aligned_points(), opt, true);
    emit(opt, out, [&](std::ostream& os) { write_curve_csv(os, grid); });
    if (!opt.out_path.empty())
      out << "wrote " << grid.surface.size() << " rows to " << opt.out_path << "; min n=" << fmt6(grid.n_min)
          << " at theta=" << fmt6(grid.theta_min) << '\n';
    return int{kExitOk};
  });
}

int cmd_surface(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opt.range.empty() && opt.range.size() != 4)
      throw Error(ErrorCode::InvalidArgument, "surface --range takes THETA_LO THETA_HI PHI_LO PHI_HI");
    const Scene scene = load_scene(opt.scene_path);
    Options local = opt;
    if (!local.steps) local.steps = kSurfaceSteps;
    const GridResult grid = run_oracle("tilt-swing", scene, scene.aligned_points(), local, true);
    emit(opt, out, [&](std::ostream& os) { write_surface_csv(os, grid); });
    if (!opt.out_path.empty())
      out << "wrote " << grid.surface.size() << " rows to " << opt.out_path << "; min n=" << fmt6(grid.n_min)
          << " at theta=" << fmt6(grid.theta_min) << " phi=" << fmt6(grid.phi_min) << '\n';
    return int{kExitOk};
  });
}

int cmd_check(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scene scene = load_scene(opt.scene_path);
    const std::string path = opt.expect_path.empty() ? default_expect_path(opt.scene_path) : opt.expect_path;
    json doc;
    try {
      doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::SceneFormat, path + ": " + e.what());
    }
    Options local = opt;
    if (local.mode.empty() && doc.contains("mode")) local.mode = doc["mode"].get<std::string>();
    Evaluator ev{scene, resolve_mode(local, scene), scene.aligned_points(), local, {}, {}, {}};

    int failures = 0;
    int rows = 0;
    for (const json& row : doc.at("rows")) {
      ++rows;
      const std::string status = row.value("status", "verified");
      const double tol = row.value("tolerance", 0.0);
      const bool at_most = row.value("compare", "") == "at_most";
      const json expected = row.at("expected");
      json actual;
      std::string problem;
      try {
        actual = ev.value(row);
      } catch (const Error& e) {
        actual = std::string(to_string(e.code()));
        problem = e.what();
      }
      const bool ok = matches(actual, expected, tol, at_most);
      if (!ok) ++failures;
      out << (ok ? "PASS " : "FAIL ") << row.value("id", row.at("quantity").get<std::string>()) << ": actual "
          << show(actual) << (at_most ? ", at most " : ", expected ") << show(expected) << " (tol " << fmt6(tol)
          << ", " << status;
      if (row.contains("paper") && !row["paper"].is_null()) out << ", printed " << show(row["paper"]);
      out << ")";
      if (!problem.empty()) out << " [" << problem << "]";
      out << '\n';
    }
    out << (rows - failures) << '/' << rows << " expectations met\n";
    return failures == 0 ? int{kExitOk} : int{kExitCheckFailed};
  });
}

}  // namespace sharpfield::cli
