#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sharpfield/cli.hpp"
#include "sharpfield/error.hpp"

namespace sharpfield::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::SceneFormat, what); }

double number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(key + " must be finite");
  return v;
}

Vec3 vec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) bad(key + " must be an array of three numbers");
  return {number(j[0], key), number(j[1], key), number(j[2], key)};
}

optimize::Range range(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) bad(key + " must be [lo, hi]");
  return {number(j[0], key), number(j[1], key)};
}

void allow_only(const json& j, const std::set<std::string>& keys, const std::string& where) {
  for (const auto& item : j.items())
    if (!keys.count(item.key())) bad("unknown key '" + item.key() + "' in " + where);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Validation: return kExitValidation;
    case ErrorClass::Infeasible: return kExitInfeasible;
    case ErrorClass::Numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

optics::CameraModel Scene::camera() const {
  optics::CameraModel cam;
  cam.f = focal_length_m;
  cam.c = coc_m;
  cam.L = lens_center;
  cam.S = sensor_center.value_or(lens_center + Vec3{0.0, 0.0, -focal_length_m});
  cam.front = front;
  cam.rear = geom::angles_from_normal(geom::UnitVec3(sensor_normal));
  cam.lens_offset = lens_offset_m;
  cam.sensor_offset = sensor_offset_m;
  cam.validate();
  return cam;
}

std::vector<Vec3> Scene::aligned_points() const {
  const geom::Mat3 rt = geom::rotation_matrix(geom::angles_from_normal(geom::UnitVec3(sensor_normal))).transposed();
  const Vec3 origin = frame == Frame::Global ? camera().optical_center() : Vec3{};
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(rt * (p - origin));
  return out;
}

Scene parse_scene(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("scene must be a JSON object");
  allow_only(j,
             {"name", "description", "focal_length_m", "coc_m", "frame", "sensor_normal", "lens_offset_m", "camera",
              "points", "mode", "oracle"},
             "scene");

  Scene s;
  for (const char* key : {"name", "description"})
    if (j.contains(key) && !j[key].is_string()) bad(std::string(key) + " must be a string");
  s.name = j.value("name", "");
  s.description = j.value("description", "");
  if (!j.contains("focal_length_m")) bad("missing focal_length_m");
  if (!j.contains("coc_m")) bad("missing coc_m");
  s.focal_length_m = number(j["focal_length_m"], "focal_length_m");
  s.coc_m = number(j["coc_m"], "coc_m");
  s.params().validate();

  if (j.contains("frame")) {
    const std::string fr = j["frame"].is_string() ? j["frame"].get<std::string>() : "";
    if (fr == "sensor_aligned")
      s.frame = Frame::SensorAligned;
    else if (fr == "global")
      s.frame = Frame::Global;
    else
      bad("frame must be \"sensor_aligned\" or \"global\"");
  }
  if (j.contains("sensor_normal")) s.sensor_normal = vec3(j["sensor_normal"], "sensor_normal");
  geom::angles_from_normal(geom::UnitVec3(s.sensor_normal));
  if (j.contains("lens_offset_m")) s.lens_offset_m = vec3(j["lens_offset_m"], "lens_offset_m");

  if (j.contains("camera")) {
    const json& c = j["camera"];
    if (!c.is_object()) bad("camera must be an object");
    allow_only(c, {"lens_center", "sensor_center", "front", "sensor_offset_m"}, "camera");
    if (c.contains("lens_center")) s.lens_center = vec3(c["lens_center"], "camera.lens_center");
    if (c.contains("sensor_center")) s.sensor_center = vec3(c["sensor_center"], "camera.sensor_center");
    if (c.contains("front")) {
      const auto r = range(c["front"], "camera.front");
      s.front = {r.lo, r.hi};
    }
    if (c.contains("sensor_offset_m")) s.sensor_offset_m = vec3(c["sensor_offset_m"], "camera.sensor_offset_m");
  }

  if (!j.contains("points") || !j["points"].is_array()) bad("points must be an array");
  for (std::size_t i = 0; i < j["points"].size(); ++i)
    s.points.push_back(vec3(j["points"][i], "points[" + std::to_string(i) + "]"));
  if (s.points.empty()) bad("points is empty");

  if (j.contains("mode")) {
    const std::string m = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    if (m != "tilt" && m != "tilt-swing") bad("mode must be \"tilt\" or \"tilt-swing\"");
    s.mode = m;
  }
  if (j.contains("oracle")) {
    const json& o = j["oracle"];
    if (!o.is_object()) bad("oracle must be an object");
    allow_only(o, {"theta_range", "phi_range", "steps"}, "oracle");
    if (o.contains("theta_range")) s.oracle.theta = range(o["theta_range"], "oracle.theta_range");
    if (o.contains("phi_range")) s.oracle.phi = range(o["phi_range"], "oracle.phi_range");
    if (o.contains("steps")) {
      if (!o["steps"].is_number_integer() || o["steps"].get<long long>() < 2) bad("oracle.steps must be an integer >= 2");
      s.oracle.steps = o["steps"].get<int>();
    }
  }
  s.camera();  // pose sanity
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scene load_scene(const std::string& path) { return parse_scene(read_file(path)); }

}  // namespace sharpfield::cli
