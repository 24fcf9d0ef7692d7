#pragma once
// Phase plane of rotational profiles: the autonomous system
//
//   x' = y,   y' = (n-1)(1 - y^2)/x - n eps h(y) sqrt(1 - y^2)
//
// on the half-strip Theta_eps = (0, inf) x (-1, 1), its nullcline Gamma_eps,
// the equilibrium e0 = ((n-1)/(lambda n), 0), its linearization and
// eigenvalue regimes, and the monotonicity-region decomposition.

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hlk/model.hpp"

namespace hlk::pp {

struct PhaseState {
  double x = 1.0;  // distance to the rotation axis, > 0
  double y = 0.0;  // angle function x', in (-1, 1)
  int eps = +1;    // sign of z'
};

inline void validate_state(const PhaseState& s) {
  if (!(s.x > 0.0))
    throw std::invalid_argument("PhaseState: x must be positive");
  if (!(s.y > -1.0 && s.y < 1.0))
    throw std::invalid_argument("PhaseState: y must lie in (-1, 1)");
  if (s.eps != 1 && s.eps != -1)
    throw std::invalid_argument("PhaseState: eps must be +-1");
}

// Right-hand side (x', y') of the first-order system for the prescribed
// function f (h(y) = y + lambda in the linear kind).
inline std::pair<double, double> rhs(const ModelParams& p,
                                     const PrescribedFunction& f,
                                     const PhaseState& s) {
  validate(p);
  validate_state(s);
  const double nd = p.nd();
  const double root = std::sqrt(1.0 - s.y * s.y);
  const double dy = (nd - 1.0) * (1.0 - s.y * s.y) / s.x -
                    nd * static_cast<double>(s.eps) * f.eval(s.y) * root;
  return {s.y, dy};
}

// Nullcline x = Gamma_eps(y) = (n-1) sqrt(1-y^2) / (n eps (y+lambda)),
// defined where eps (y + lambda) > 0; absent elsewhere.
inline std::optional<double> gamma_curve(const ModelParams& p, int eps,
                                         double y) {
  validate(p);
  if (!(y > -1.0 && y < 1.0))
    throw std::invalid_argument("gamma_curve: y must lie in (-1, 1)");
  const double denom = static_cast<double>(eps) * (y + p.lambda);
  if (!(denom > 0.0)) return std::nullopt;
  return (p.nd() - 1.0) * std::sqrt(1.0 - y * y) / (p.nd() * denom);
}

enum class Regime { Spiral, ImproperNode, Sink };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Spiral: return "Spiral";
    case Regime::ImproperNode: return "ImproperNode";
    case Regime::Sink: return "Sink";
  }
  return "?";
}

struct Equilibrium {
  double x0 = 0.0;
  std::complex<double> mu1, mu2;  // eigenvalues of the linearization
  Regime regime = Regime::Sink;
};

// Exact equilibrium data for the linear kind.  The linearized matrix at e0
// is [[0, 1], [-n^2 lambda^2/(n-1), -n]]; its eigenvalues are
// mu = (-n +- n sqrt(1 - 4 lambda^2/(n-1)))/2, always with negative real
// part.  The regime trichotomy follows the sign of the discriminant, i.e.
// lambda against sqrt(n-1)/2.
inline Equilibrium equilibrium_analysis(const ModelParams& p) {
  validate(p);
  Equilibrium eq;
  const double nd = p.nd();
  eq.x0 = p.cmc_cylinder_radius();
  const double disc = 1.0 - 4.0 * p.lambda * p.lambda / (nd - 1.0);
  if (disc > 0.0) {
    const double r = nd * std::sqrt(disc);
    eq.mu1 = std::complex<double>((-nd + r) / 2.0, 0.0);
    eq.mu2 = std::complex<double>((-nd - r) / 2.0, 0.0);
    eq.regime = Regime::Sink;
  } else if (disc == 0.0) {
    eq.mu1 = eq.mu2 = std::complex<double>(-nd / 2.0, 0.0);
    eq.regime = Regime::ImproperNode;
  } else {
    const double im = nd * std::sqrt(-disc) / 2.0;
    eq.mu1 = std::complex<double>(-nd / 2.0, im);
    eq.mu2 = std::complex<double>(-nd / 2.0, -im);
    eq.regime = Regime::Spiral;
  }
  return eq;
}

// Coefficients of the quadratic Lyapunov form V(w) = p11 w1^2 + 2 p12 w1 w2
// + p22 w2^2 for the linearization A = [[0,1],[-c,-n]], solving
// A^T P + P A = -I.  V strictly decreases along orbits near e0 in every
// regime.
struct LyapunovForm {
  double p11 = 1.0, p12 = 0.0, p22 = 1.0;
  double eval(double w1, double w2) const {
    return p11 * w1 * w1 + 2.0 * p12 * w1 * w2 + p22 * w2 * w2;
  }
};

inline LyapunovForm lyapunov_form(const ModelParams& p) {
  const double nd = p.nd();
  const double c = nd * nd * p.lambda * p.lambda / (nd - 1.0);
  LyapunovForm v;
  v.p12 = 1.0 / (2.0 * c);
  v.p22 = (v.p12 + 0.5) / nd;
  v.p11 = c * v.p22 + nd * v.p12;
  return v;
}

// Monotonicity regions.  For eps = +1 the axis y = 0 and Gamma_1 cut the
// strip into four regions (Lambda1..Lambda4 when lambda >= 1, and the
// lambda < 1 variants Lambda1P..Lambda4P where Gamma_1 only spans
// y > -lambda).  For eps = -1 there are two regions when lambda >= 1
// (Gamma_{-1} is empty) and three when lambda < 1.
enum class RegionLabel {
  Lambda1, Lambda2, Lambda3, Lambda4,          // eps = +1, lambda >= 1
  Lambda1P, Lambda2P, Lambda3P, Lambda4P,      // eps = +1, lambda < 1
  LambdaPlus, LambdaMinus,                     // eps = -1, lambda >= 1
  Lambda1M, Lambda2M, Lambda3M,                // eps = -1, lambda < 1
  OnAxisY0, OnGamma,                           // boundary labels
};

inline const char* to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::Lambda1: return "Lambda1";
    case RegionLabel::Lambda2: return "Lambda2";
    case RegionLabel::Lambda3: return "Lambda3";
    case RegionLabel::Lambda4: return "Lambda4";
    case RegionLabel::Lambda1P: return "Lambda1+";
    case RegionLabel::Lambda2P: return "Lambda2+";
    case RegionLabel::Lambda3P: return "Lambda3+";
    case RegionLabel::Lambda4P: return "Lambda4+";
    case RegionLabel::LambdaPlus: return "Lambda+";
    case RegionLabel::LambdaMinus: return "Lambda-";
    case RegionLabel::Lambda1M: return "Lambda1-";
    case RegionLabel::Lambda2M: return "Lambda2-";
    case RegionLabel::Lambda3M: return "Lambda3-";
    case RegionLabel::OnAxisY0: return "OnAxisY0";
    case RegionLabel::OnGamma: return "OnGamma";
  }
  return "?";
}

struct Region {
  RegionLabel label = RegionLabel::Lambda1;
  int sign_dx = 0;  // sign of x' throughout the region
  int sign_dy = 0;  // sign of y' throughout the region
};

// Tolerance within which a point counts as lying on a nullcline or axis.
inline constexpr double kBoundaryTol = 1e-12;

// All interior regions of Theta_eps, in a fixed order.
inline std::vector<Region> enumerate_regions(const ModelParams& p, int eps) {
  validate(p);
  if (eps == +1) {
    if (p.lambda >= 1.0)
      return {{RegionLabel::Lambda1, +1, -1},
              {RegionLabel::Lambda2, -1, -1},
              {RegionLabel::Lambda3, -1, +1},
              {RegionLabel::Lambda4, +1, +1}};
    return {{RegionLabel::Lambda1P, +1, -1},
            {RegionLabel::Lambda2P, -1, -1},
            {RegionLabel::Lambda3P, -1, +1},
            {RegionLabel::Lambda4P, +1, +1}};
  }
  if (p.lambda >= 1.0)
    return {{RegionLabel::LambdaPlus, +1, +1},
            {RegionLabel::LambdaMinus, -1, +1}};
  return {{RegionLabel::Lambda1M, +1, +1},
          {RegionLabel::Lambda2M, -1, -1},
          {RegionLabel::Lambda3M, -1, +1}};
}

// The unique region (or boundary label) containing the state, with the
// monotone signs of (x', y') attached.  Region assignment is determined by
// sign(y) and sign(x - Gamma_eps(y)) where the nullcline exists.
inline Region classify_region(const ModelParams& p, const PhaseState& s) {
  validate(p);
  validate_state(s);
  const auto gamma = gamma_curve(p, s.eps, s.y);
  if (gamma && std::abs(s.x - *gamma) <= kBoundaryTol)
    return Region{RegionLabel::OnGamma, 0, 0};
  if (std::abs(s.y) <= kBoundaryTol)
    return Region{RegionLabel::OnAxisY0, 0, 0};

  const bool wide = p.lambda >= 1.0;  // lambda >= 1 region layout
  if (s.eps == +1) {
    const bool right = gamma && s.x > *gamma;  // kappa > 0 side of Gamma_1
    if (s.y > 0.0)
      return right ? Region{wide ? RegionLabel::Lambda1 : RegionLabel::Lambda1P, +1, -1}
                   : Region{wide ? RegionLabel::Lambda4 : RegionLabel::Lambda4P, +1, +1};
    return right ? Region{wide ? RegionLabel::Lambda2 : RegionLabel::Lambda2P, -1, -1}
                 : Region{wide ? RegionLabel::Lambda3 : RegionLabel::Lambda3P, -1, +1};
  }
  if (wide)  // Gamma_{-1} is empty; y' > 0 throughout Theta_{-1}
    return s.y > 0.0 ? Region{RegionLabel::LambdaPlus, +1, +1}
                     : Region{RegionLabel::LambdaMinus, -1, +1};
  if (s.y > 0.0) return Region{RegionLabel::Lambda1M, +1, +1};
  // Below Gamma_{-1} (which spans y < -lambda) the curvature is negative.
  if (gamma && s.x > *gamma) return Region{RegionLabel::Lambda2M, -1, -1};
  return Region{RegionLabel::Lambda3M, -1, +1};
}

// Polyline sample of Gamma_eps for export: pairs (x, y) where the curve
// exists, clipped at x <= x_clip.
inline std::vector<std::pair<double, double>> gamma_polyline(
    const ModelParams& p, int eps, double x_clip, int points = 801) {
  validate(p);
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i < points; ++i) {
    const double y = -1.0 + 2.0 * static_cast<double>(i) / points;
    const auto x = gamma_curve(p, eps, y);
    if (x && *x <= x_clip) out.emplace_back(*x, y);
  }
  return out;
}

}  // namespace hlk::pp
