#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "sharpfield/cli.hpp"

namespace sharpfield::cli {

using nlohmann::json;
using optimize::ContactCandidate;
using optimize::GridResult;
using optimize::OptimizeReport;

namespace {

constexpr double kDeg = 57.29577951308232;

std::string printf_g(const char* format, double v) {
  if (std::isnan(v)) return "";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Doubles that are not finite become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* kind_name(optimize::ContactKind k) {
  switch (k) {
    case optimize::ContactKind::VertexVertex: return "vertex-vertex";
    case optimize::ContactKind::EdgeVertex: return "edge-vertex";
    case optimize::ContactKind::EdgeEdge: return "edge-edge";
    case optimize::ContactKind::FaceVertex: return "face-vertex";
    case optimize::ContactKind::ZeroTilt: return "zero-tilt";
  }
  return "";
}

json one_based(const std::vector<int>& v) {
  json a = json::array();
  for (int i : v) a.push_back(i + 1);
  return a;
}

json candidate_json(const ContactCandidate& c) {
  json j;
  j["label"] = c.label.str();
  j["kind"] = kind_name(c.label.kind);
  j["first"] = one_based(c.label.first);
  j["second"] = one_based(c.label.second);
  j["theta"] = num(c.theta);
  j["phi"] = num(c.phi);
  j["slopes"] = {{"a1", num(c.slopes.a1)}, {"a2", num(c.slopes.a2)}};
  j["fnumber"] = num(c.fnumber);
  j["feasible"] = c.feasible;
  j["reason"] = c.infeasibility_reason ? json(*c.infeasibility_reason) : json(nullptr);
  return j;
}

std::string csv_num(double v) { return printf_g("%.12g", v); }

}  // namespace

std::string fmt6(double v) {
  if (std::isnan(v)) return "-";
  return printf_g("%.6g", v);
}

void print_report_table(std::ostream& os, const OptimizeReport& report) {
  auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                 const std::string& e, const std::string& f, const std::string& g) {
    os << std::left << std::setw(12) << a << std::setw(13) << b << std::setw(11) << c << std::setw(13) << d
       << std::setw(11) << e << std::setw(11) << f << g << '\n';
  };
  row("Contact", "theta", "deg", "phi", "deg", "n", "status");
  for (const auto& c : report.candidates) {
    row(c.label.str(), fmt6(c.theta), fmt6(c.theta * kDeg), fmt6(c.phi), fmt6(c.phi * kDeg), fmt6(c.fnumber),
        c.feasible ? "ok" : "infeasible: " + c.infeasibility_reason.value_or(""));
  }
  const auto& b = report.best;
  os << "best: " << b.label.str() << " theta=" << fmt6(b.theta) << " phi=" << fmt6(b.phi) << " n=" << fmt6(b.fnumber)
     << '\n';
  os << "untilted: n=" << fmt6(report.zero_tilt_value) << '\n';
  for (const auto& pc : report.conditions) {
    os << "pair " << pc.i + 1 << ',' << pc.j + 1 << ": ratio="
       << (pc.ratio ? fmt6(*pc.ratio) : std::string("-")) << (pc.satisfied ? " > f" : " <= f");
    if (!pc.reason.empty()) os << " (" << pc.reason << ')';
    os << '\n';
  }
  for (const auto& note : report.notices) os << "note: " << note << '\n';
  if (report.oracle) {
    const auto& o = *report.oracle;
    os << "oracle: theta=" << fmt6(o.theta) << " phi=" << fmt6(o.phi) << " n=" << fmt6(o.n)
       << " tolerance=" << fmt6(o.tolerance) << (o.agrees ? " agrees" : " DISAGREES") << '\n';
  }
}

std::string report_json(const OptimizeReport& report, std::string_view mode, const std::optional<GridResult>& grid) {
  json j;
  j["mode"] = std::string(mode);
  j["candidates"] = json::array();
  for (const auto& c : report.candidates) j["candidates"].push_back(candidate_json(c));
  j["best"] = candidate_json(report.best);
  j["zero_tilt_value"] = num(report.zero_tilt_value);
  j["conditions"] = json::array();
  for (const auto& pc : report.conditions) {
    json r;
    r["pair"] = {pc.i + 1, pc.j + 1};
    r["ratio"] = pc.ratio ? num(*pc.ratio) : json(nullptr);
    r["satisfied"] = pc.satisfied;
    if (!pc.reason.empty()) r["reason"] = pc.reason;
    j["conditions"].push_back(r);
  }
  j["notices"] = report.notices;
  if (report.oracle) {
    const auto& o = *report.oracle;
    j["oracle"] = {{"theta", num(o.theta)}, {"phi", num(o.phi)},         {"n", num(o.n)},
                   {"tolerance", num(o.tolerance)}, {"agrees", o.agrees}};
    if (grid) {
      j["oracle"]["resolution_bound"] = num(grid->resolution_bound);
      j["oracle"]["feasible_nodes"] = grid->feasible_nodes;
    }
  } else {
    j["oracle"] = nullptr;
  }
  return j.dump(2);
}

void write_curve_csv(std::ostream& os, const GridResult& grid) {
  os << "theta,n,contact_label\n";
  for (const auto& node : grid.surface)
    os << csv_num(node.theta) << ',' << (node.n ? csv_num(*node.n) : "") << ',' << node.label << '\n';
}

void write_surface_csv(std::ostream& os, const GridResult& grid) {
  os << "theta,phi,n,contact_label\n";
  for (const auto& node : grid.surface)
    os << csv_num(node.theta) << ',' << csv_num(node.phi) << ',' << (node.n ? csv_num(*node.n) : "") << ','
       << node.label << '\n';
}

}  // namespace sharpfield::cli
