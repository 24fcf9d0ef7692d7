#pragma once
// Exporters and importers: CSV curves/traces with shortest round-trip
// decimal formatting, JSON event logs / classification reports / phase
// portraits, and the surface-of-revolution OBJ mesh writer.  All outputs are
// deterministic: identical inputs produce byte-identical files.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlk/classify.hpp"
#include "hlk/cylindrical.hpp"
#include "hlk/model.hpp"
#include "hlk/orbits.hpp"
#include "hlk/phase_plane.hpp"

namespace hlk::io {

using json = nlohmann::ordered_json;

// Shortest decimal representation that round-trips the IEEE-754 double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

// --- CSV ------------------------------------------------------------------

inline void write_curve_csv(std::ostream& os,
                            const std::vector<cyl::BaseCurveSample>& samples) {
  os << "s,x,z,theta,kappa\n";
  for (const auto& r : samples)
    os << format_double(r.s) << ',' << format_double(r.x) << ','
       << format_double(r.z) << ',' << format_double(r.theta) << ','
       << format_double(r.kappa) << '\n';
}

inline void write_profile_csv(std::ostream& os, const orb::ProfileCurve& pc) {
  os << "s,x,z,theta,kappa\n";
  for (const auto& r : pc.samples)
    os << format_double(r.s) << ',' << format_double(r.x) << ','
       << format_double(r.z) << ',' << format_double(r.theta) << ','
       << format_double(r.kappa) << '\n';
}

inline void write_trace_csv(std::ostream& os, const orb::OrbitTrace& tr) {
  os << "s,x,z,theta,eps\n";
  for (const auto& r : tr.samples)
    os << format_double(r.s) << ',' << format_double(r.x) << ','
       << format_double(r.z) << ',' << format_double(r.theta) << ','
       << (r.eps > 0 ? "1" : "-1") << '\n';
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string field;
  while (std::getline(hs, field, ',')) t.header.push_back(field);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(parse_double(field));
    if (row.size() != t.header.size())
      throw std::invalid_argument("csv: ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  return read_csv(is);
}

// --- JSON -----------------------------------------------------------------

inline json params_json(const ModelParams& p) {
  return json{{"n", p.n}, {"lambda", p.lambda}, {"v_last", p.v_last}};
}

inline json events_json(const orb::OrbitTrace& tr) {
  json evs = json::array();
  for (const auto& ev : tr.events)
    evs.push_back(json{{"kind", orb::to_string(ev.kind)},
                       {"s", ev.s},
                       {"x", ev.x},
                       {"y", ev.y}});
  return json{{"events", std::move(evs)},
              {"termination", orb::to_string(tr.termination)},
              {"winding", tr.winding}};
}

inline json verification_json(const cyl::VerificationReport& rep) {
  return json{{"case", cyl::to_string(rep.cyl_case)},
              {"tol", rep.tol},
              {"max_dev_x", rep.max_dev_x},
              {"max_dev_z", rep.max_dev_z},
              {"max_dev_theta", rep.max_dev_theta},
              {"x_ok", rep.x_ok},
              {"z_ok", rep.z_ok},
              {"theta_ok", rep.theta_ok},
              {"passed", rep.passed()},
              {"notes", rep.notes}};
}

inline json crossing_class_json(const cls::CrossingClass& c) {
  json j{{"kind", cls::to_string(c.kind)}};
  if (c.kind != cls::CrossingKind::Zero) j["witnessed"] = c.witnessed;
  if (c.kind == cls::CrossingKind::InfiniteWitnessed) j["cap"] = c.cap;
  return j;
}

inline json report_json(const cls::ClassificationReport& rep) {
  json j;
  j["params"] = params_json(rep.params);
  j["seed_kind"] = rep.seed_kind;
  if (rep.seed_x0) j["seed_x0"] = *rep.seed_x0;
  if (rep.failed()) {
    j["error"] = rep.error;
    return j;
  }
  j["surface_topology"] = cls::to_string(rep.surface_topology);
  j["embedded"] = rep.embedded;
  json si{{"kind", cls::to_string(rep.self_intersection_class.kind)}};
  if (rep.self_intersection_class.kind != cls::SelfIntersectionKind::None) {
    si["count"] = rep.self_intersection_class.count;
    si["cap"] = rep.self_intersection_class.cap;
  }
  j["self_intersection_class"] = std::move(si);
  json ends = json::array();
  for (const auto& e : rep.ends) {
    json ej{{"kind", cls::to_string(e.kind)}};
    if (e.kind == cls::EndKind::ConvergesToCMCCylinder) {
      ej["radius"] = e.radius;
      ej["crossing_class"] = crossing_class_json(e.crossing);
    }
    ends.push_back(std::move(ej));
  }
  j["ends"] = std::move(ends);
  j["regime"] = pp::to_string(rep.regime);
  j["winding"] = rep.winding;
  j["truncated"] = rep.truncated;
  j["notes"] = rep.notes;
  return j;
}

inline json portrait_json(const ModelParams& p, int eps) {
  validate(p);
  if (eps != 1 && eps != -1)
    throw std::invalid_argument("portrait: eps must be +-1");
  json j;
  j["params"] = params_json(p);
  j["eps"] = eps;
  json regions = json::array();
  for (const auto& r : pp::enumerate_regions(p, eps))
    regions.push_back(json{{"label", pp::to_string(r.label)},
                           {"sign_dx", r.sign_dx},
                           {"sign_dy", r.sign_dy}});
  j["regions"] = std::move(regions);
  const double x0 = p.cmc_cylinder_radius();
  json poly = json::array();
  for (const auto& [x, y] : pp::gamma_polyline(p, eps, 50.0 * std::max(1.0, x0)))
    poly.push_back(json::array({x, y}));
  j["gamma_polyline"] = std::move(poly);
  const pp::Equilibrium eq = pp::equilibrium_analysis(p);
  j["equilibrium"] = json{
      {"x0", eq.x0},
      {"mu", json::array({json::array({eq.mu1.real(), eq.mu1.imag()}),
                          json::array({eq.mu2.real(), eq.mu2.imag()})})},
      {"regime", pp::to_string(eq.regime)}};
  return j;
}

// --- OBJ ------------------------------------------------------------------

// Revolves a profile (x(s), z(s)) around the vertical axis into a triangle
// mesh: `segments` sectors per ring, one ring per profile sample, quad
// strips split into triangles, counter-clockwise as seen from the side the
// profile's oriented normal points to.  Only meaningful for n = 2 (surfaces
// in R^3).
inline void write_revolution_obj(std::ostream& os,
                                 const std::vector<double>& xs,
                                 const std::vector<double>& zs, int segments) {
  if (xs.size() != zs.size() || xs.size() < 2)
    throw std::invalid_argument("obj: need >= 2 profile samples");
  if (segments < 3)
    throw std::invalid_argument("obj: need >= 3 segments");
  const std::size_t m = xs.size();
  os << "# surface of revolution: " << m << " rings x " << segments
     << " sectors\n";
  for (std::size_t i = 0; i < m; ++i) {
    for (int jdx = 0; jdx < segments; ++jdx) {
      const double phi = 2.0 * kPi * static_cast<double>(jdx) /
                         static_cast<double>(segments);
      os << "v " << format_double(xs[i] * std::cos(phi)) << ' '
         << format_double(xs[i] * std::sin(phi)) << ' '
         << format_double(zs[i]) << '\n';
    }
  }
  const auto vid = [segments](std::size_t ring, int sector) {
    return static_cast<long>(ring) * segments + (sector % segments) + 1;
  };
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (int jdx = 0; jdx < segments; ++jdx) {
      const long a = vid(i, jdx);
      const long b = vid(i + 1, jdx);
      const long c = vid(i + 1, jdx + 1);
      const long d = vid(i, jdx + 1);
      os << "f " << a << ' ' << b << ' ' << c << '\n';
      os << "f " << a << ' ' << c << ' ' << d << '\n';
    }
  }
}

}  // namespace hlk::io
