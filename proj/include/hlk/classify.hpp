#pragma once
// Maps orbit traces to the classification taxonomy of rotational
// hypersurfaces with linear prescribed mean curvature: topology,
// embeddedness, self-intersection class and end behavior, as structured,
// machine-checkable reports.  Unbounded phenomena are reported as witnessed
// at the configured caps.

#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hlk/model.hpp"
#include "hlk/orbits.hpp"
#include "hlk/phase_plane.hpp"

namespace hlk::cls {

enum class SurfaceTopology {
  Disk,
  Cylinder_Sn1xR,
  Hyperplane,
  RoundCylinder,
  EntireGraph,
};

inline const char* to_string(SurfaceTopology t) {
  switch (t) {
    case SurfaceTopology::Disk: return "Disk";
    case SurfaceTopology::Cylinder_Sn1xR: return "Cylinder_Sn1xR";
    case SurfaceTopology::Hyperplane: return "Hyperplane";
    case SurfaceTopology::RoundCylinder: return "RoundCylinder";
    case SurfaceTopology::EntireGraph: return "EntireGraph";
  }
  return "?";
}

enum class CrossingKind { InfiniteWitnessed, Finite, Zero };

inline const char* to_string(CrossingKind k) {
  switch (k) {
    case CrossingKind::InfiniteWitnessed: return "InfiniteWitnessed";
    case CrossingKind::Finite: return "Finite";
    case CrossingKind::Zero: return "Zero";
  }
  return "?";
}

// How often an end meets the CMC cylinder it converges to; counts are
// desk-scale witnesses, with the cap recorded for InfiniteWitnessed.
struct CrossingClass {
  CrossingKind kind = CrossingKind::Zero;
  int witnessed = 0;
  int cap = 0;
};

enum class SelfIntersectionKind { None, Finite, InfiniteWitnessed };

inline const char* to_string(SelfIntersectionKind k) {
  switch (k) {
    case SelfIntersectionKind::None: return "None";
    case SelfIntersectionKind::Finite: return "Finite";
    case SelfIntersectionKind::InfiniteWitnessed: return "InfiniteWitnessed";
  }
  return "?";
}

struct SelfIntersectionClass {
  SelfIntersectionKind kind = SelfIntersectionKind::None;
  int count = 0;
  int cap = 0;
};

enum class EndKind { ConvergesToCMCCylinder, GraphOutsideCompact, UnboundedLooping };

inline const char* to_string(EndKind k) {
  switch (k) {
    case EndKind::ConvergesToCMCCylinder: return "ConvergesToCMCCylinder";
    case EndKind::GraphOutsideCompact: return "GraphOutsideCompact";
    case EndKind::UnboundedLooping: return "UnboundedLooping";
  }
  return "?";
}

struct EndClass {
  EndKind kind = EndKind::GraphOutsideCompact;
  double radius = 0.0;     // ConvergesToCMCCylinder only
  CrossingClass crossing;  // ConvergesToCMCCylinder only
};

struct ClassificationReport {
  ModelParams params;
  std::string seed_kind;
  std::optional<double> seed_x0;  // interior seeds
  SurfaceTopology surface_topology = SurfaceTopology::Disk;
  bool embedded = false;
  SelfIntersectionClass self_intersection_class;
  std::vector<EndClass> ends;
  pp::Regime regime = pp::Regime::Sink;
  int winding = 0;
  bool truncated = false;
  std::vector<std::string> notes;
  std::string error;  // per-cell failure in batch runs

  bool failed() const { return !error.empty(); }
};

namespace detail {

// Sign changes of x - radius along the trace, outside the equilibrium ball
// (oscillation inside the convergence ball is not a meaningful crossing
// witness).
inline int count_radius_crossings(const orb::OrbitTrace& tr, double radius,
                                  double ball) {
  int count = 0;
  bool have = false;
  double prev = 0.0;
  for (const auto& smp : tr.samples) {
    const double wx = smp.x - radius;
    const double wy = smp.y();
    if (wx * wx + wy * wy <= ball * ball) continue;
    if (wx == 0.0) continue;
    if (have && (wx > 0.0) != (prev > 0.0)) ++count;
    prev = wx;
    have = true;
  }
  return count;
}

inline CrossingClass crossing_class_for(pp::Regime regime, int witnessed,
                                        int cap) {
  CrossingClass c;
  c.witnessed = witnessed;
  c.cap = cap;
  switch (regime) {
    case pp::Regime::Spiral:
      c.kind = CrossingKind::InfiniteWitnessed;
      break;
    case pp::Regime::ImproperNode:
      c.kind = CrossingKind::Finite;
      break;
    case pp::Regime::Sink:
      c.kind = witnessed == 0 ? CrossingKind::Zero : CrossingKind::Finite;
      break;
  }
  return c;
}

inline SelfIntersectionClass self_class_finite(const orb::ProfileCurve& pc) {
  SelfIntersectionClass s;
  s.count = pc.self_intersections;
  s.cap = orb::kSelfIntersectionCap;
  s.kind = pc.self_intersections == 0 ? SelfIntersectionKind::None
                                      : SelfIntersectionKind::Finite;
  return s;
}

inline std::vector<double> turn_radii(const orb::OrbitTrace& tr,
                                      orb::EventKind kind) {
  std::vector<double> xs;
  for (const auto& ev : tr.events)
    if (ev.kind == kind) xs.push_back(ev.x);
  return xs;
}

// Merge a backward and a forward trace from the same interior seed into one
// profile with ascending arc length.
inline orb::ProfileCurve merge_profiles(const orb::OrbitTrace& bwd,
                                        const orb::OrbitTrace& fwd) {
  orb::ProfileCurve pb = orb::reconstruct_profile(bwd);
  const orb::ProfileCurve pf = orb::reconstruct_profile(fwd);
  orb::ProfileCurve out;
  out.params = fwd.params;
  out.prescribed = fwd.prescribed;
  out.samples = std::move(pb.samples);
  // skip the duplicated seed sample at s = 0
  out.samples.insert(out.samples.end(), pf.samples.begin() + 1,
                     pf.samples.end());
  std::vector<geom::Vec2> poly;
  poly.reserve(out.samples.size());
  for (const auto& smp : out.samples) poly.push_back({smp.x, smp.z});
  const auto si =
      geom::count_self_intersections(poly, orb::kSelfIntersectionCap);
  out.self_intersections = si.count;
  out.self_intersections_saturated = si.saturated;
  bool inc = true, dec = true;
  for (std::size_t i = 0; i + 1 < out.samples.size(); ++i) {
    if (!(out.samples[i + 1].z > out.samples[i].z)) inc = false;
    if (!(out.samples[i + 1].z < out.samples[i].z)) dec = false;
  }
  out.is_graph_over_axis = inc || dec;
  return out;
}

inline bool kappa_sign_definite(const orb::ProfileCurve& pc) {
  bool pos = true, neg = true;
  for (const auto& smp : pc.samples) {
    if (!(smp.kappa > 0.0)) pos = false;
    if (!(smp.kappa < 0.0)) neg = false;
  }
  return pos || neg;
}

}  // namespace detail

// Classification of the rotational hypersurface meeting the axis with
// normal direction delta = +-1.  For lambda = 1, delta = -1 the exact
// horizontal hyperplane is returned without integration.
inline ClassificationReport classify_axis_surface(const ModelParams& p,
                                                  int delta,
                                                  orb::OrbitOptions opts = {}) {
  validate(p);
  if (delta != 1 && delta != -1)
    throw std::invalid_argument("classify_axis_surface: delta must be +-1");
  ClassificationReport rep;
  rep.params = p;
  rep.seed_kind = delta == +1 ? "axis_up" : "axis_down";
  rep.regime = pp::equilibrium_analysis(p).regime;

  if (delta == -1 && p.lambda == 1.0) {
    rep.surface_topology = SurfaceTopology::Hyperplane;
    rep.embedded = true;
    rep.self_intersection_class = SelfIntersectionClass{};
    rep.ends = {EndClass{EndKind::GraphOutsideCompact, 0.0, {}}};
    rep.notes.push_back(
        "exact special solution: horizontal hyperplane with downward "
        "normal, returned without integration");
    return rep;
  }

  const PrescribedFunction f = PrescribedFunction::linear(p.lambda);
  const orb::OrbitSeed seed = delta == +1 ? orb::OrbitSeed::axis_up(p)
                                          : orb::OrbitSeed::axis_down(p);
  const orb::OrbitTrace tr = orb::integrate_orbit(seed, f, opts);
  const orb::ProfileCurve pc = orb::reconstruct_profile(tr);
  rep.winding = tr.winding;
  const double radius = p.cmc_cylinder_radius();

  if (tr.termination == orb::EventKind::StepFailure) {
    rep.error = "integration step failure";
    rep.truncated = true;
    return rep;
  }

  if (delta == +1) {
    rep.surface_topology = SurfaceTopology::Disk;
    rep.self_intersection_class = detail::self_class_finite(pc);
    rep.embedded = pc.self_intersections == 0;
    const int crossings =
        detail::count_radius_crossings(tr, radius, 10.0 * tr.opts.e0_radius);
    rep.ends = {EndClass{
        EndKind::ConvergesToCMCCylinder, radius,
        detail::crossing_class_for(rep.regime, crossings,
                                   tr.opts.winding_cap)}};
    if (tr.termination != orb::EventKind::ConvergedToE0) {
      rep.truncated = true;
      rep.notes.push_back(std::string("trace truncated before equilibrium "
                                      "convergence: ") +
                          orb::to_string(tr.termination));
    }
    return rep;
  }

  if (p.lambda > 1.0) {
    // Alternating turns with growing radii; the height oscillates while the
    // distance to the axis grows without bound.
    rep.surface_topology = SurfaceTopology::Disk;
    rep.embedded = false;
    rep.self_intersection_class =
        SelfIntersectionClass{SelfIntersectionKind::InfiniteWitnessed,
                              pc.self_intersections,
                              orb::kSelfIntersectionCap};
    rep.ends = {EndClass{EndKind::UnboundedLooping, 0.0, {}}};
    rep.truncated = true;
    const auto plus = detail::turn_radii(tr, orb::EventKind::TurnAtYPlus1);
    if (plus.size() >= 2)
      rep.notes.push_back(
          std::string("turn radii at y = 1 increase: x1 = ") +
          std::to_string(plus[0]) + ", x3 = " + std::to_string(plus[1]));
    return rep;
  }

  // lambda < 1: entire strictly convex graph converging to y = -lambda.
  rep.surface_topology = SurfaceTopology::EntireGraph;
  rep.self_intersection_class = detail::self_class_finite(pc);
  rep.embedded = pc.self_intersections == 0;
  rep.ends = {EndClass{EndKind::GraphOutsideCompact, 0.0, {}}};
  if (detail::kappa_sign_definite(pc))
    rep.notes.push_back(
        "strictly convex: profile curvature is sign-definite over the "
        "witnessed range (negative in the downward orientation)");
  if (tr.termination != orb::EventKind::ConvergedToAsymptote) {
    rep.truncated = true;
    rep.notes.push_back(std::string("trace truncated before settling on "
                                    "y = -lambda: ") +
                        orb::to_string(tr.termination));
  }
  return rep;
}

// Classification of the rotational hypersurface through (x_hat, 0) away from
// the axis.  Both integration directions from the seed are used: the forward
// end converges to the CMC cylinder, the backward end is unbounded (looping
// for lambda > 1, a graph outside a compact set for lambda <= 1).  For
// lambda < 1 embeddedness follows the seed side of the equilibrium radius:
// the orbit seeded below (n-1)/(lambda n) turns at y = -1 (unit normal
// -e_{n+1} at the horizontal-tangent point) and stays embedded, the one
// seeded above turns at y = +1 and crosses itself once.
inline ClassificationReport classify_offaxis_surface(
    const ModelParams& p, double x_hat, orb::OrbitOptions opts = {}) {
  validate(p);
  if (!(x_hat > 0.0))
    throw std::invalid_argument("classify_offaxis_surface: x_hat must be > 0");
  ClassificationReport rep;
  rep.params = p;
  rep.seed_kind = "interior";
  rep.seed_x0 = x_hat;
  rep.regime = pp::equilibrium_analysis(p).regime;
  const double radius = p.cmc_cylinder_radius();

  if (std::abs(x_hat - radius) <= 1e-12) {
    rep.surface_topology = SurfaceTopology::RoundCylinder;
    rep.embedded = true;
    rep.ends = {EndClass{EndKind::ConvergesToCMCCylinder, radius,
                         CrossingClass{CrossingKind::Zero, 0, 0}},
                EndClass{EndKind::ConvergesToCMCCylinder, radius,
                         CrossingClass{CrossingKind::Zero, 0, 0}}};
    rep.notes.push_back(
        "seed at the equilibrium: the exact CMC round cylinder");
    return rep;
  }

  const PrescribedFunction f = PrescribedFunction::linear(p.lambda);
  orb::OrbitOptions fo = opts;
  fo.direction = +1;
  orb::OrbitOptions bo = opts;
  bo.direction = -1;
  const orb::OrbitSeed seed = orb::OrbitSeed::interior(p, x_hat, 0.0, +1);
  const orb::OrbitTrace fwd = orb::integrate_orbit(seed, f, fo);
  const orb::OrbitTrace bwd = orb::integrate_orbit(seed, f, bo);
  if (fwd.termination == orb::EventKind::StepFailure ||
      bwd.termination == orb::EventKind::StepFailure) {
    rep.error = "integration step failure";
    rep.truncated = true;
    return rep;
  }
  const orb::ProfileCurve pc = detail::merge_profiles(bwd, fwd);
  rep.winding = fwd.winding;

  rep.surface_topology = SurfaceTopology::Cylinder_Sn1xR;
  const int crossings = detail::count_radius_crossings(
      fwd, radius, 10.0 * fwd.opts.e0_radius);
  EndClass cyl_end{EndKind::ConvergesToCMCCylinder, radius,
                   detail::crossing_class_for(rep.regime, crossings,
                                              fwd.opts.winding_cap)};
  if (fwd.termination != orb::EventKind::ConvergedToE0) {
    rep.truncated = true;
    rep.notes.push_back(
        std::string("forward trace truncated before equilibrium "
                    "convergence: ") +
        orb::to_string(fwd.termination));
  }

  if (p.lambda > 1.0) {
    rep.embedded = false;
    rep.self_intersection_class =
        SelfIntersectionClass{SelfIntersectionKind::InfiniteWitnessed,
                              pc.self_intersections,
                              orb::kSelfIntersectionCap};
    rep.ends = {cyl_end, EndClass{EndKind::UnboundedLooping, 0.0, {}}};
    rep.truncated = true;
    return rep;
  }

  rep.self_intersection_class = detail::self_class_finite(pc);
  rep.ends = {cyl_end, EndClass{EndKind::GraphOutsideCompact, 0.0, {}}};
  if (p.lambda == 1.0) {
    rep.embedded = false;
    return rep;
  }
  const bool turns_up =
      !detail::turn_radii(bwd, orb::EventKind::TurnAtYPlus1).empty();
  rep.embedded = !turns_up;
  rep.notes.push_back(
      turns_up
          ? "seed above the equilibrium radius: the outer end turns at "
            "y = +1 and the profile crosses itself"
          : "seed below the equilibrium radius: the outer end turns at "
            "y = -1 (unit normal -e_{n+1} there) and the profile is "
            "embedded");
  if (rep.embedded && pc.self_intersections != 0)
    rep.notes.push_back("witness mismatch: self-intersections found on an "
                        "embedded configuration");
  return rep;
}

// Batch classification over a parameter grid with a fixed axis seed side.
// Cells run independently on a small worker pool; per-cell errors are
// recorded in the cell and never abort the batch.  Output order follows the
// input grid.
inline std::vector<ClassificationReport> classification_table(
    const std::vector<ModelParams>& grid, int delta,
    const orb::OrbitOptions& opts = {}, int jobs = 0) {
  if (grid.empty())
    throw std::invalid_argument("classification_table: empty grid");
  if (jobs <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    jobs = hw == 0 ? 1 : static_cast<int>(hw);
  }
  jobs = std::min<int>(jobs, static_cast<int>(grid.size()));
  std::vector<ClassificationReport> out(grid.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      try {
        out[i] = classify_axis_surface(grid[i], delta, opts);
      } catch (const std::exception& e) {
        out[i] = ClassificationReport{};
        out[i].params = grid[i];
        out[i].seed_kind = delta == +1 ? "axis_up" : "axis_down";
        out[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace hlk::cls
