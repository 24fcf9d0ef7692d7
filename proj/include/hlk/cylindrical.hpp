#pragma once
// Base curves of flat cylindrical hypersurfaces with linear prescribed mean
// curvature.  The tangent angle theta obeys
//
//     theta'(s) = n (v cos(theta) + lambda),   x' = cos(theta), z' = sin(theta)
//
// which integrates in closed form; this header provides the closed-form
// coordinates per parameter regime, an adaptive numerical integration of the
// same system, and the cross-verification between the two routes.
//
// Closed forms are stated for v > 0.  For v < 0 the map
// (s, z, theta) -> (-s, -z, pi - theta) carries the v > 0 solutions onto the
// v < 0 ones, and v = 0 gives the circle of radius 1/(lambda n).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlk/model.hpp"
#include "hlk/ode.hpp"

namespace hlk::cyl {

// Parameter regime of the closed forms: lambda > v, lambda = v, and
// lambda < v with initial angle 0 or pi.
enum class CylCase { LambdaGreater, LambdaEqual, LambdaLess0, LambdaLessPi };

inline const char* to_string(CylCase c) {
  switch (c) {
    case CylCase::LambdaGreater: return "LambdaGreater";
    case CylCase::LambdaEqual: return "LambdaEqual";
    case CylCase::LambdaLess0: return "LambdaLess0";
    case CylCase::LambdaLessPi: return "LambdaLessPi";
  }
  return "?";
}

struct BaseCurveSample {
  double s = 0.0;
  double x = 0.0;
  double z = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
};

// Case consistency against (lambda, |v_last|); LambdaLess0/LambdaLessPi both
// require lambda < |v_last|.
inline void check_case(const ModelParams& p, CylCase c) {
  validate(p);
  const double av = std::abs(p.v_last);
  const bool ok = (c == CylCase::LambdaGreater && p.lambda > av) ||
                  (c == CylCase::LambdaEqual && p.lambda == av) ||
                  ((c == CylCase::LambdaLess0 || c == CylCase::LambdaLessPi) &&
                   p.lambda < av);
  if (!ok)
    throw std::invalid_argument(
        std::string("cylindrical: case ") + to_string(c) +
        " is inconsistent with lambda vs |v_last|");
}

inline CylCase case_auto(const ModelParams& p) {
  const double av = std::abs(p.v_last);
  if (p.lambda > av) return CylCase::LambdaGreater;
  if (p.lambda == av) return CylCase::LambdaEqual;
  return CylCase::LambdaLess0;
}

// Initial tangent angle of the closed form for each case (v > 0).
inline double case_theta0(CylCase c) {
  return c == CylCase::LambdaLessPi ? kPi : 0.0;
}

namespace detail {

// arctan continued across the half-periods of the inner tangent, so that
// 2*unwrapped_arctan_tan(A, w) is continuous and strictly monotone in w.
inline double unwrapped_arctan_tan(double A, double w) {
  const double k = std::round(w / kPi);
  return k * kPi + std::atan(A * std::tan(w - k * kPi));
}

// theta(s) for v > 0 (or the circle when v = 0), continuous in s.
inline double theta_closed_pos(int n, double lambda, double v, CylCase c,
                               double s) {
  const double nd = static_cast<double>(n);
  if (v == 0.0) return nd * lambda * s;  // circle of radius 1/(lambda n)
  switch (c) {
    case CylCase::LambdaGreater: {
      const double A = std::sqrt((lambda + v) / (lambda - v));
      const double B = 0.5 * nd * std::sqrt(lambda * lambda - v * v);
      return 2.0 * unwrapped_arctan_tan(A, B * s);
    }
    case CylCase::LambdaEqual:
      return 2.0 * std::atan(nd * v * s);
    case CylCase::LambdaLess0: {
      const double A = std::sqrt((v + lambda) / (v - lambda));
      const double B = 0.5 * nd * std::sqrt(v * v - lambda * lambda);
      return 2.0 * std::atan(A * std::tanh(B * s));
    }
    case CylCase::LambdaLessPi: {
      // 2 arccot(t tanh(B s)) with t = sqrt((v - lambda)/(v + lambda)); the
      // radicand is forced by theta(0) = pi and x' = cos(theta).
      const double t = std::sqrt((v - lambda) / (v + lambda));
      const double B = 0.5 * nd * std::sqrt(v * v - lambda * lambda);
      return kPi - 2.0 * std::atan(t * std::tanh(B * s));
    }
  }
  return 0.0;
}

inline BaseCurveSample base_curve_closed_pos(int n, double lambda, double v,
                                             CylCase c, double s) {
  const double nd = static_cast<double>(n);
  BaseCurveSample out;
  out.s = s;
  if (v == 0.0) {
    const double w = nd * lambda * s;
    out.theta = w;
    out.x = std::sin(w) / (nd * lambda);
    out.z = (1.0 - std::cos(w)) / (nd * lambda);
    out.kappa = nd * lambda;
    return out;
  }
  const double theta = theta_closed_pos(n, lambda, v, c, s);
  out.theta = theta;
  out.kappa = nd * (v * std::cos(theta) + lambda);
  // x follows from theta' = n (v cos(theta) + lambda) and x' = cos(theta):
  //   x(s) = (theta(s) - theta(0))/(n v) - (lambda/v) s.
  out.x = (theta - case_theta0(c)) / (nd * v) - (lambda / v) * s;
  switch (c) {
    case CylCase::LambdaGreater: {
      const double W = nd * std::sqrt(lambda * lambda - v * v);
      out.z = std::log(lambda - v * std::cos(W * s)) / (nd * v);
      break;
    }
    case CylCase::LambdaEqual: {
      const double q = nd * v * s;
      out.z = std::log1p(q * q) / (nd * v);
      break;
    }
    case CylCase::LambdaLess0: {
      const double W = nd * std::sqrt(v * v - lambda * lambda);
      out.z = std::log(v * std::cosh(W * s) - lambda) / (nd * v);
      break;
    }
    case CylCase::LambdaLessPi: {
      const double W = nd * std::sqrt(v * v - lambda * lambda);
      out.z = std::log(v * std::cosh(W * s) + lambda) / (nd * v);
      break;
    }
  }
  return out;
}

}  // namespace detail

// Tangent angle theta(s) of the closed-form base curve, continued to a
// continuous (and, for LambdaGreater, strictly monotone) function of s.
inline double theta_closed_form(const ModelParams& p, CylCase c, double s) {
  check_case(p, c);
  if (p.v_last >= 0.0)
    return detail::theta_closed_pos(p.n, p.lambda, p.v_last, c, s);
  return kPi - detail::theta_closed_pos(p.n, p.lambda, -p.v_last, c, -s);
}

// Closed-form sample (x, z, theta, kappa) at arc length s, with z normalized
// so the per-case formula holds verbatim (the curve is only determined up to
// vertical translations).  For v_last < 0 the reflected solution
// (s, z, theta) -> (-s, -z, pi - theta) is returned.
inline BaseCurveSample base_curve_closed_form(const ModelParams& p, CylCase c,
                                              double s) {
  check_case(p, c);
  if (p.v_last >= 0.0)
    return detail::base_curve_closed_pos(p.n, p.lambda, p.v_last, c, s);
  BaseCurveSample r =
      detail::base_curve_closed_pos(p.n, p.lambda, -p.v_last, c, -s);
  return BaseCurveSample{s, r.x, -r.z, kPi - r.theta, r.kappa};
}

struct IntegrateOptions {
  double step = 1e-3;      // spacing of the returned dense samples
  double max_step = 0.1;   // cap on the adaptive step
};

// Integration failure (step-size underflow) carrying the last good state.
struct IntegrationFailure : std::runtime_error {
  explicit IntegrationFailure(const BaseCurveSample& s)
      : std::runtime_error("cylindrical: adaptive step size underflow"),
        last_good(s) {}
  BaseCurveSample last_good;
};

namespace detail {

struct CylRhs {
  double nd, lambda, v;
  void operator()(double, const ode::State<3>& u, ode::State<3>& du) const {
    const double c = std::cos(u[2]);
    du[0] = c;
    du[1] = std::sin(u[2]);
    du[2] = nd * (v * c + lambda);
  }
};

}  // namespace detail

// Adaptive integration of (x', z', theta') from (0, 0, theta0) over
// [s_lo, s_hi] (s_lo <= 0 <= s_hi), dense-sampled every opts.step.  Local
// error per step is kept at or below tol.  Samples are returned with s
// ascending.
inline std::vector<BaseCurveSample> integrate_base_curve(
    const ModelParams& p, double theta0, double s_lo, double s_hi, double tol,
    const IntegrateOptions& opts = {}) {
  validate(p);
  if (!(tol > 0.0)) throw std::invalid_argument("cylindrical: tol must be > 0");
  if (!(s_lo <= 0.0 && 0.0 <= s_hi))
    throw std::invalid_argument("cylindrical: s span must contain 0");
  if (!(opts.step > 0.0))
    throw std::invalid_argument("cylindrical: sample step must be > 0");

  const detail::CylRhs rhs{p.nd(), p.lambda, p.v_last};
  const auto kappa_of = [&](double theta) {
    return p.nd() * (p.v_last * std::cos(theta) + p.lambda);
  };

  std::vector<BaseCurveSample> fwd, bwd;
  const auto run = [&](double s_end, int dir, std::vector<BaseCurveSample>& out) {
    ode::StepControl ctl;
    ctl.tol = tol;
    ctl.rtol = 0.0;  // angle dynamics: accuracy must not scale with |theta|
    ctl.h_max = opts.max_step;
    ode::State<3> u0{0.0, 0.0, theta0};
    ode::Dopri5<3, detail::CylRhs> st(rhs, 0.0, u0, dir, ctl);
    out.push_back(BaseCurveSample{0.0, 0.0, 0.0, theta0, kappa_of(theta0)});
    if (s_end == 0.0) return;
    long k = 1;
    double s_next = dir * opts.step;
    while (true) {
      if (!st.step()) {
        const auto& u = st.u_end();
        throw IntegrationFailure(BaseCurveSample{
            st.s_end(), u[0], u[1], u[2], kappa_of(u[2])});
      }
      while ((dir > 0 && s_next <= st.s_end()) ||
             (dir < 0 && s_next >= st.s_end())) {
        const auto u = st.eval(s_next);
        out.push_back(
            BaseCurveSample{s_next, u[0], u[1], u[2], kappa_of(u[2])});
        if ((dir > 0 && s_next >= s_end) || (dir < 0 && s_next <= s_end))
          return;
        ++k;
        s_next = dir * static_cast<double>(k) * opts.step;
        if ((dir > 0 && s_next > s_end) || (dir < 0 && s_next < s_end))
          s_next = s_end;
      }
    }
  };
  run(s_hi, +1, fwd);
  run(s_lo, -1, bwd);

  std::vector<BaseCurveSample> out;
  out.reserve(fwd.size() + bwd.size());
  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) out.push_back(*it);
  out.pop_back();  // drop the duplicate s = 0 sample
  out.insert(out.end(), fwd.begin(), fwd.end());
  return out;
}

struct VerifyOptions {
  double integ_tol = 1e-10;  // adaptive tolerance of the numerical route
  double max_step = 0.01;    // step cap, keeps dense interpolation error low
  double step = 2e-3;        // comparison grid spacing
};

struct VerificationReport {
  CylCase cyl_case = CylCase::LambdaGreater;
  double tol = 0.0;
  double max_dev_x = 0.0;
  double max_dev_z = 0.0;
  double max_dev_theta = 0.0;
  bool x_ok = false;
  bool z_ok = false;
  bool theta_ok = false;
  std::vector<std::string> notes;

  bool passed() const { return x_ok && z_ok && theta_ok; }
};

// Integrates the ODE system from the case's initial angle and reports the
// maximum deviation per coordinate against the closed forms over
// [s_lo, s_hi], after aligning the free vertical translation at s = 0.
// A coordinate whose deviation exceeds tol is flagged.
inline VerificationReport verify_closed_forms(const ModelParams& p, CylCase c,
                                              double s_lo, double s_hi,
                                              double tol,
                                              const VerifyOptions& vopts = {}) {
  check_case(p, c);
  VerificationReport rep;
  rep.cyl_case = c;
  rep.tol = tol;

  const double theta0 = base_curve_closed_form(p, c, 0.0).theta;
  IntegrateOptions iopts;
  iopts.step = vopts.step;
  iopts.max_step = vopts.max_step;
  const auto numeric =
      integrate_base_curve(p, theta0, s_lo, s_hi, vopts.integ_tol, iopts);
  const double z_anchor = base_curve_closed_form(p, c, 0.0).z;

  for (const auto& smp : numeric) {
    const auto cf = base_curve_closed_form(p, c, smp.s);
    rep.max_dev_x = std::max(rep.max_dev_x, std::abs(smp.x - cf.x));
    rep.max_dev_z =
        std::max(rep.max_dev_z, std::abs(smp.z - (cf.z - z_anchor)));
    rep.max_dev_theta =
        std::max(rep.max_dev_theta, std::abs(smp.theta - cf.theta));
  }
  rep.x_ok = rep.max_dev_x <= tol;
  rep.z_ok = rep.max_dev_z <= tol;
  rep.theta_ok = rep.max_dev_theta <= tol;
  if (c == CylCase::LambdaEqual) {
    rep.notes.push_back(
        "x-coefficient: x(s) = -s + (2/(n v)) arctan(n v s); the coefficient "
        "is 2/n at v = 1 -- the transcription (n/2) arctan(n s) is "
        "inconsistent with x' = cos(theta) and is rejected by this check");
    rep.notes.push_back(
        "general v: the equal-case formulas are used with s rescaled through "
        "n v s; any residual mismatch would surface in max_dev_x/z/theta");
  }
  return rep;
}

}  // namespace hlk::cyl
