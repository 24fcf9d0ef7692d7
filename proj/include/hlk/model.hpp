#pragma once
// Shared domain types for hypersurfaces in R^{n+1} whose mean curvature is a
// linear function of the Gauss map, H = <eta, v> + lambda, together with the
// exact special solutions used as baselines by the other modules.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlk {

inline constexpr double kPi = 3.14159265358979323846;

struct ModelParams {
  int n = 2;            // hypersurface dimension; the ambient space is R^{n+1}
  double lambda = 1.0;  // prescribed constant, normalized positive
  double v_last = 1.0;  // last component of the unit density vector

  double nd() const { return static_cast<double>(n); }

  // Radius of the rotational CMC cylinder generated by the phase-plane
  // equilibrium.
  double cmc_cylinder_radius() const { return (nd() - 1.0) / (lambda * nd()); }
};

// Throws std::invalid_argument on out-of-range parameters. lambda = 0
// (self-translating solitons) is rejected as out of scope; lambda < 0 is
// handled by flipping the orientation, not here.
inline void validate(const ModelParams& p) {
  if (p.n < 2) throw std::invalid_argument("ModelParams: n must be >= 2");
  if (!(p.lambda > 0.0)) {
    if (p.lambda == 0.0)
      throw std::invalid_argument(
          "ModelParams: lambda = 0 selects translating solitons, which are "
          "out of scope for this library");
    throw std::invalid_argument(
        "ModelParams: lambda must be positive (negative lambda corresponds "
        "to the opposite orientation)");
  }
  if (!(std::abs(p.v_last) <= 1.0))
    throw std::invalid_argument("ModelParams: |v_last| must be <= 1");
}

enum class Setting { Cylindrical, Rotational };

// Prescribed value of the mean curvature as a function of the vertical
// component y of the unit normal.
struct PrescribedFunction {
  enum class Kind { Linear, CosineComparison };

  Kind kind = Kind::Linear;
  double lambda = 1.0;  // only used by the Linear kind

  static PrescribedFunction linear(double lambda) {
    return PrescribedFunction{Kind::Linear, lambda};
  }
  static PrescribedFunction cosine_comparison() {
    return PrescribedFunction{Kind::CosineComparison, 0.0};
  }

  // h(y) for y in [-1, 1].  Linear: y + lambda.  CosineComparison:
  // (1/2) cos(pi y / 2), an even non-negative function vanishing at y = +-1.
  double eval(double y) const {
    if (!(y >= -1.0 && y <= 1.0))
      throw std::domain_error("PrescribedFunction: y must lie in [-1, 1]");
    if (kind == Kind::Linear) return y + lambda;
    if (y == 1.0 || y == -1.0) return 0.0;  // exact zeros at the poles
    return 0.5 * std::cos(0.5 * kPi * y);
  }
};

inline double eval_prescribed(const PrescribedFunction& f, double y) {
  return f.eval(y);
}

// Exact invariant solutions.  Radius applies to RoundCylinder/CircleBase,
// theta0 to StraightLineBase, orientation (sign of <eta, e_{n+1}>) to
// Hyperplane.
struct SpecialSolution {
  enum class Kind { Hyperplane, RoundCylinder, StraightLineBase, CircleBase };

  Kind kind = Kind::Hyperplane;
  double radius = 0.0;
  double theta0 = 0.0;
  int orientation = -1;
};

// Enumerates every exact invariant solution for the given setting.
//
// Cylindrical: the circle base of radius 1/(lambda n) when the density vector
// is parallel to the rulings (v_last = 0), and the straight-line bases with
// cos(theta0) = -lambda / v_last whenever lambda <= |v_last|.
// Rotational: the CMC cylinder of radius (n-1)/(lambda n), and for lambda = 1
// the horizontal hyperplane with downward normal.
inline std::vector<SpecialSolution> special_solutions(const ModelParams& p,
                                                      Setting setting) {
  validate(p);
  std::vector<SpecialSolution> out;
  if (setting == Setting::Rotational) {
    out.push_back(SpecialSolution{SpecialSolution::Kind::RoundCylinder,
                                  p.cmc_cylinder_radius(), 0.0, 0});
    if (p.lambda == 1.0)
      out.push_back(SpecialSolution{SpecialSolution::Kind::Hyperplane, 0.0,
                                    0.0, -1});
    return out;
  }
  if (p.v_last == 0.0) {
    out.push_back(SpecialSolution{SpecialSolution::Kind::CircleBase,
                                  1.0 / (p.lambda * p.nd()), 0.0, 0});
    return out;
  }
  if (p.lambda <= std::abs(p.v_last)) {
    const double theta0 = std::acos(-p.lambda / p.v_last);
    out.push_back(SpecialSolution{SpecialSolution::Kind::StraightLineBase, 0.0,
                                  theta0, 0});
    if (theta0 != 0.0 && theta0 != kPi)
      out.push_back(SpecialSolution{SpecialSolution::Kind::StraightLineBase,
                                    0.0, -theta0, 0});
  }
  return out;
}

// Residual of a special solution in its defining relation: the curvature of
// the base/profile data minus the prescribed value.  Exactly zero for all
// enumerated solutions.
inline double special_solution_residual(const ModelParams& p, Setting setting,
                                        const SpecialSolution& sol) {
  const double nd = p.nd();
  switch (sol.kind) {
    case SpecialSolution::Kind::StraightLineBase:
      // kappa = 0 against n (v cos(theta0) + lambda)
      return 0.0 - nd * (p.v_last * std::cos(sol.theta0) + p.lambda);
    case SpecialSolution::Kind::CircleBase:
      // kappa = 1/r against n lambda (the density vector is ruling-parallel)
      return 1.0 / sol.radius - nd * p.lambda;
    case SpecialSolution::Kind::RoundCylinder:
      // n H = n (x' + lambda) with x' = 0 against (n-1) z'/x with z' = 1
      return (nd - 1.0) / sol.radius - nd * p.lambda;
    case SpecialSolution::Kind::Hyperplane:
      // H = 0 against <eta, e_{n+1}> + lambda with eta = -e_{n+1}
      return 0.0 - (static_cast<double>(sol.orientation) + p.lambda);
  }
  (void)setting;
  return 0.0;
}

}  // namespace hlk
