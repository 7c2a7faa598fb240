#include <ostream>

#include <CLI11.hpp>

#include "sharpfield/cli.hpp"

namespace sharpfield::cli {

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sharpfield: view-camera focus and minimum f-number solver"};
  app.require_subcommand(1);

  Options opt;
  std::string positional;
  std::vector<double> uv;

  auto scene_args = [&](CLI::App* sub) {
    sub->add_option("scene_file", positional, "Scene JSON file");
    sub->add_option("--scene", opt.scene_path, "Scene JSON file");
  };
  auto mode_arg = [&](CLI::App* sub) {
    sub->add_option("--mode", opt.mode, "tilt or tilt-swing (default: the scene's mode, else tilt)")
        ->check(CLI::IsMember({"tilt", "tilt-swing"}));
  };
  auto grid_args = [&](CLI::App* sub, const char* range_help) {
    sub->add_option("--range", opt.range, range_help)->expected(2, 4);
    sub->add_option("--steps", opt.steps, "Grid nodes per axis")->check(CLI::Range(2, 100000));
  };

  CLI::App* acquire = app.add_subcommand("acquire", "Object point whose sharp image is at a sensor point");
  scene_args(acquire);
  acquire->add_option("--uv", uv, "Sensor coordinates U V (m)")->expected(2)->required();
  acquire->add_flag("--json", opt.json, "JSON output");

  CLI::App* focus_plane = app.add_subcommand("focus-plane", "Front standard tilt/swing bringing the points into focus");
  scene_args(focus_plane);
  focus_plane->add_flag("--json", opt.json, "JSON output");

  CLI::App* optimize = app.add_subcommand("optimize", "Minimum f-number tilt (and swing) for the scene points");
  scene_args(optimize);
  mode_arg(optimize);
  grid_args(optimize, "Oracle tilt range LO HI, then swing range LO HI");
  optimize->add_flag("--oracle", opt.oracle, "Cross-check against a dense grid");
  optimize->add_option("--out", opt.out_path, "Write the report here instead of stdout");
  optimize->add_flag("--json", opt.json, "JSON output");

  CLI::App* curve = app.add_subcommand("curve", "n(theta) on a grid, as CSV");
  scene_args(curve);
  grid_args(curve, "Tilt range LO HI");
  curve->add_option("--out", opt.out_path, "CSV path (default stdout)");

  CLI::App* surface = app.add_subcommand("surface", "n(theta, phi) on a grid, as CSV");
  scene_args(surface);
  grid_args(surface, "THETA_LO THETA_HI PHI_LO PHI_HI");
  surface->add_option("--out", opt.out_path, "CSV path (default stdout)");

  CLI::App* check = app.add_subcommand("check", "Compare results with a fixture expectations file");
  scene_args(check);
  mode_arg(check);
  grid_args(check, "Oracle tilt range LO HI, then swing range LO HI");
  check->add_option("--expect", opt.expect_path, "Expectations file (default: <scene>.expect.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (opt.scene_path.empty()) opt.scene_path = positional;
  if (opt.scene_path.empty()) {
    err << "error: InvalidArgument: no scene given (positional or --scene)\n";
    return kExitValidation;
  }
  if (uv.size() == 2) opt.uv = std::array<double, 2>{uv[0], uv[1]};

  if (acquire->parsed()) return cmd_acquire(opt, out, err);
  if (focus_plane->parsed()) return cmd_focus_plane(opt, out, err);
  if (optimize->parsed()) return cmd_optimize(opt, out, err);
  if (curve->parsed()) return cmd_curve(opt, out, err);
  if (surface->parsed()) return cmd_surface(opt, out, err);
  return cmd_check(opt, out, err);
}

}  // namespace sharpfield::cli
