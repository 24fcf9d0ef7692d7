#pragma once
// Embedded Dormand-Prince 5(4) stepper with the scheme's standard dense
// output.  The stepper advances one accepted step at a time; callers own
// sampling, event detection and termination.  Roots of scalar functionals of
// the dense state are localized by bisection.

#include <array>
#include <cmath>
#include <cstddef>

namespace hlk::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double tol = 1e-10;    // per-step error tolerance; sets atol and rtol
  double h_init = 1e-3;  // magnitude of the first attempted step
  double h_min = 1e-14;  // below this magnitude the step is declared failed
  double h_max = 0.5;    // cap on the step magnitude
  double atol = -1.0;    // absolute tolerance; negative selects tol
  double rtol = -1.0;    // relative tolerance; negative selects tol.  Systems
                         // whose smoothness does not scale with the state
                         // magnitude (angles, quadratures) want rtol = 0.

  double atol_eff() const { return atol >= 0.0 ? atol : tol; }
  double rtol_eff() const { return rtol >= 0.0 ? rtol : tol; }
};

namespace dp {
// Dormand-Prince 5(4) tableau.
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                        a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                        a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                        a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                        b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                        b6 = 11.0 / 84.0;
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                        c5 = 8.0 / 9.0;
// Difference between the 5th and the embedded 4th order weights.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                        e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                        e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output weights.
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;
}  // namespace dp

template <std::size_t N, class Rhs>
class Dopri5 {
 public:
  using StateN = State<N>;

  Dopri5(Rhs rhs, double s0, const StateN& u0, int direction, StepControl ctl)
      : rhs_(rhs),
        ctl_(ctl),
        dir_(direction >= 0 ? 1.0 : -1.0),
        s_a_(s0),
        s_b_(s0),
        h_acc_(0.0),
        u_a_(u0),
        u_b_(u0) {
    rhs_(s0, u0, k1_);
    h_next_ = dir_ * std::min(ctl_.h_init, ctl_.h_max);
  }

  // Advance one accepted step.  Returns false on step-size underflow; the
  // last accepted state stays available through s_end()/u_end().
  bool step() {
    const double s = s_b_;
    const StateN u = u_b_;
    double h = h_next_;
    StateN k2, k3, k4, k5, k6, k7, ut, unew;
    for (int attempt = 0; attempt < 200; ++attempt) {
      if (std::abs(h) < ctl_.h_min) return false;
      if (std::abs(h) > ctl_.h_max) h = dir_ * ctl_.h_max;

      for (std::size_t i = 0; i < N; ++i) ut[i] = u[i] + h * dp::a21 * k1_[i];
      rhs_(s + dp::c2 * h, ut, k2);
      for (std::size_t i = 0; i < N; ++i)
        ut[i] = u[i] + h * (dp::a31 * k1_[i] + dp::a32 * k2[i]);
      rhs_(s + dp::c3 * h, ut, k3);
      for (std::size_t i = 0; i < N; ++i)
        ut[i] = u[i] + h * (dp::a41 * k1_[i] + dp::a42 * k2[i] +
                            dp::a43 * k3[i]);
      rhs_(s + dp::c4 * h, ut, k4);
      for (std::size_t i = 0; i < N; ++i)
        ut[i] = u[i] + h * (dp::a51 * k1_[i] + dp::a52 * k2[i] +
                            dp::a53 * k3[i] + dp::a54 * k4[i]);
      rhs_(s + dp::c5 * h, ut, k5);
      for (std::size_t i = 0; i < N; ++i)
        ut[i] = u[i] + h * (dp::a61 * k1_[i] + dp::a62 * k2[i] +
                            dp::a63 * k3[i] + dp::a64 * k4[i] +
                            dp::a65 * k5[i]);
      rhs_(s + h, ut, k6);
      for (std::size_t i = 0; i < N; ++i)
        unew[i] = u[i] + h * (dp::b1 * k1_[i] + dp::b3 * k3[i] +
                              dp::b4 * k4[i] + dp::b5 * k5[i] +
                              dp::b6 * k6[i]);
      rhs_(s + h, unew, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double sc =
            ctl_.atol_eff() +
            ctl_.rtol_eff() * std::max(std::abs(u[i]), std::abs(unew[i]));
        const double e = h * (dp::e1 * k1_[i] + dp::e3 * k3[i] +
                              dp::e4 * k4[i] + dp::e5 * k5[i] +
                              dp::e6 * k6[i] + dp::e7 * k7[i]);
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(N));

      if (err <= 1.0) {
        for (std::size_t i = 0; i < N; ++i) {
          const double ydiff = unew[i] - u[i];
          const double bspl = h * k1_[i] - ydiff;
          rc_[0][i] = u[i];
          rc_[1][i] = ydiff;
          rc_[2][i] = bspl;
          rc_[3][i] = ydiff - h * k7[i] - bspl;
          rc_[4][i] = h * (dp::d1 * k1_[i] + dp::d3 * k3[i] +
                           dp::d4 * k4[i] + dp::d5 * k5[i] +
                           dp::d6 * k6[i] + dp::d7 * k7[i]);
        }
        s_a_ = s;
        u_a_ = u;
        s_b_ = s + h;
        u_b_ = unew;
        h_acc_ = h;
        k1_ = k7;  // first-same-as-last
        const double fac =
            0.9 * std::pow(std::max(err, 1e-12), -0.2);
        h_next_ = h * std::min(5.0, std::max(0.2, fac));
        if (std::abs(h_next_) > ctl_.h_max) h_next_ = dir_ * ctl_.h_max;
        return true;
      }
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    return false;
  }

  double s_begin() const { return s_a_; }
  double s_end() const { return s_b_; }
  const StateN& u_begin() const { return u_a_; }
  const StateN& u_end() const { return u_b_; }

  // Dense evaluation on the last accepted step, s in [s_begin, s_end].
  StateN eval(double s) const {
    StateN out;
    const double th = (s - s_a_) / h_acc_;
    const double th1 = 1.0 - th;
    for (std::size_t i = 0; i < N; ++i)
      out[i] = rc_[0][i] +
               th * (rc_[1][i] +
                     th1 * (rc_[2][i] +
                            th * (rc_[3][i] + th1 * rc_[4][i])));
    return out;
  }

 private:
  Rhs rhs_;
  StepControl ctl_;
  double dir_;
  double s_a_, s_b_, h_next_, h_acc_;
  StateN u_a_, u_b_;
  StateN k1_;
  StateN rc_[5];
};

// Bisection of the scalar functional g over [sa, sb] inside the last
// accepted step, assuming g(sa) and g(sb) have opposite signs.  Returns the
// root parameter localized to |ds| <= tol_s.
template <std::size_t N, class Stepper, class G>
double locate_root(const Stepper& st, G g, double sa, double sb,
                   double tol_s = 1e-13) {
  double ga = g(st.eval(sa));
  if (ga == 0.0) return sa;
  for (int it = 0; it < 120 && std::abs(sb - sa) > tol_s; ++it) {
    const double sm = 0.5 * (sa + sb);
    const double gm = g(st.eval(sm));
    if (gm == 0.0) return sm;
    if ((ga > 0.0) == (gm > 0.0)) {
      sa = sm;
      ga = gm;
    } else {
      sb = sm;
    }
  }
  return 0.5 * (sa + sb);
}

}  // namespace hlk::ode
