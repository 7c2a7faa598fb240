#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sharpfield/dof.hpp"
#include "sharpfield/error.hpp"
#include "sharpfield/focus.hpp"
#include "sharpfield/optics.hpp"
#include "sharpfield/optimize.hpp"

namespace sharpfield::cli {

using geom::Vec3;

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitValidation = 2,
  kExitInfeasible = 3,
  kExitNumerical = 4,
};

int exit_code_for(ErrorCode code);

enum class Frame { SensorAligned, Global };

struct OracleSpec {
  optimize::Range theta{-0.6, 0.6};
  optimize::Range phi{-0.6, 0.6};
  int steps = 2001;
};

/// One scene document. Lengths in metres, angles in radians.
///
/// In the sensor-aligned frame the optical centre is the origin. In the global
/// frame the `camera` pose places the lens and sensor.
struct Scene {
  std::string name;
  std::string description;
  double focal_length_m = 0.05;
  double coc_m = 3e-5;
  Frame frame = Frame::SensorAligned;
  Vec3 sensor_normal{0.0, 0.0, 1.0};
  Vec3 lens_offset_m{};
  Vec3 lens_center{};
  std::optional<Vec3> sensor_center;  // default (0, 0, -f) relative to the lens centre
  geom::RotationAngles front{};
  Vec3 sensor_offset_m{};
  std::vector<Vec3> points;
  std::optional<std::string> mode;
  OracleSpec oracle;

  dof::DofParams params() const { return {focal_length_m, coc_m}; }
  optics::CameraModel camera() const;
  /// Points moved into the frame with the optical centre at the origin and
  /// the sensor normal along e3.
  std::vector<Vec3> aligned_points() const;
};

/// Throws SceneFormat (malformed document) or InvalidArgument (bad values).
Scene parse_scene(std::string_view text);
Scene load_scene(const std::string& path);

std::string read_file(const std::string& path);

// ---------------------------------------------------------------------------
// Output

/// Fixed 6-significant-digit rendering used by every table.
std::string fmt6(double v);

void print_report_table(std::ostream& os, const optimize::OptimizeReport& report);
std::string report_json(const optimize::OptimizeReport& report, std::string_view mode,
                        const std::optional<optimize::GridResult>& grid);

/// theta,n,contact_label with an empty n and a reason code on infeasible nodes.
void write_curve_csv(std::ostream& os, const optimize::GridResult& grid);
/// theta,phi,n,contact_label, theta-major.
void write_surface_csv(std::ostream& os, const optimize::GridResult& grid);

// ---------------------------------------------------------------------------
// Commands

struct Options {
  std::string scene_path;
  std::string mode;                      // tilt | tilt-swing; empty: scene default, else tilt
  std::vector<double> range;             // 2 values (curve) or 4 (surface)
  std::optional<int> steps;
  bool oracle = false;
  std::string out_path;                  // empty: stdout
  bool json = false;
  std::optional<std::array<double, 2>> uv;  // acquire
  std::string expect_path;               // check; empty: <scene>.expect.json
};

int cmd_acquire(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_focus_plane(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_optimize(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_curve(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_surface(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_check(const Options& opt, std::ostream& out, std::ostream& err);

/// Parses the command line and dispatches; returns the exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sharpfield::cli
