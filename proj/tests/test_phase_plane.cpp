#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hlk/phase_plane.hpp"

using hlk::ModelParams;
using hlk::PrescribedFunction;
using hlk::kPi;
using namespace hlk::pp;

TEST_CASE("right-hand side values") {
  const auto lin1 = PrescribedFunction::linear(1.0);
  const auto [dx, dy] = rhs(ModelParams{2, 1.0, 1.0}, lin1, {1.0, 0.0, +1});
  CHECK(dx == 0.0);
  CHECK(dy == -1.0);

  const auto lin2 = PrescribedFunction::linear(2.0);
  const auto [ex, ey] = rhs(ModelParams{2, 2.0, 1.0}, lin2, {0.25, 0.0, +1});
  CHECK(ex == 0.0);
  CHECK(ey == 0.0);  // equilibrium
}

TEST_CASE("nullcline kills the second component") {
  std::mt19937_64 rng(20240811u);
  std::uniform_real_distribution<double> uy(-0.999, 0.999);
  std::uniform_real_distribution<double> ul(0.05, 3.0);
  std::uniform_int_distribution<int> un(2, 10);
  std::uniform_int_distribution<int> ue(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const ModelParams p{un(rng), ul(rng), 1.0};
    const int eps = ue(rng) ? +1 : -1;
    const double y = uy(rng);
    const auto gx = gamma_curve(p, eps, y);
    if (!gx) continue;
    const auto f = PrescribedFunction::linear(p.lambda);
    const auto [dx, dy] = rhs(p, f, {*gx, y, eps});
    (void)dx;
    // relative to the magnitude of the two cancelling terms
    const double scale = (p.nd() - 1.0) * (1.0 - y * y) / *gx;
    CHECK(std::abs(dy) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("gamma examples") {
  CHECK(gamma_curve(ModelParams{3, 0.5, 1.0}, +1, 0.0).value() ==
        Catch::Approx(4.0 / 3.0).epsilon(1e-14));
  // global maximum at y = -1/lambda
  const ModelParams p{2, 2.0, 1.0};
  const double peak = gamma_curve(p, +1, -0.5).value();
  CHECK(peak == Catch::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-12));
  for (int i = 1; i < 2000; ++i) {
    const double y = -1.0 + 2.0 * i / 2000.0;
    CHECK(gamma_curve(p, +1, y).value() <= peak + 1e-12);
  }
  CHECK_FALSE(gamma_curve(p, -1, 0.0).has_value());
}

TEST_CASE("gamma equals the equilibrium radius at y = 0") {
  for (const int n : {2, 3, 7})
    for (const double lambda : {0.3, 1.0, 2.5}) {
      const ModelParams p{n, lambda, 1.0};
      CHECK(gamma_curve(p, +1, 0.0).value() ==
            Catch::Approx(p.cmc_cylinder_radius()).epsilon(1e-14));
    }
}

TEST_CASE("equilibrium eigenvalues and regimes") {
  SECTION("n = 5, lambda = 1: double eigenvalue -2.5, improper node") {
    const auto eq = equilibrium_analysis(ModelParams{5, 1.0, 1.0});
    CHECK(eq.mu1 == eq.mu2);
    CHECK(eq.mu1.real() == -2.5);
    CHECK(eq.mu1.imag() == 0.0);
    CHECK(eq.regime == Regime::ImproperNode);
  }
  SECTION("n = 2, lambda = 2: -1 +- i sqrt(15), spiral") {
    const auto eq = equilibrium_analysis(ModelParams{2, 2.0, 1.0});
    CHECK(eq.x0 == 0.25);
    CHECK(eq.mu1.real() == Catch::Approx(-1.0).epsilon(1e-14));
    CHECK(eq.mu1.imag() == Catch::Approx(std::sqrt(15.0)).epsilon(1e-14));
    CHECK(eq.mu2.imag() == Catch::Approx(-std::sqrt(15.0)).epsilon(1e-14));
    CHECK(eq.regime == Regime::Spiral);
  }
  SECTION("n = 10, lambda = 0.5: two distinct negative reals, sink") {
    const auto eq = equilibrium_analysis(ModelParams{10, 0.5, 1.0});
    CHECK(eq.regime == Regime::Sink);
    CHECK(eq.mu1.imag() == 0.0);
    CHECK(eq.mu2.imag() == 0.0);
    CHECK(eq.mu1.real() < 0.0);
    CHECK(eq.mu2.real() < eq.mu1.real());
  }
}

TEST_CASE("eigenvalues satisfy the characteristic polynomial") {
  for (int n = 2; n <= 12; ++n)
    for (const double lambda : {0.2, 0.7, 1.0, 1.8, 3.0}) {
      const ModelParams p{n, lambda, 1.0};
      const auto eq = equilibrium_analysis(p);
      const double nd = p.nd();
      const double c = nd * nd * lambda * lambda / (nd - 1.0);
      for (const auto mu : {eq.mu1, eq.mu2}) {
        const auto res = mu * mu + nd * mu + c;
        CHECK(std::abs(res) < 1e-12 * std::max(1.0, c));
        CHECK(mu.real() < 0.0);
      }
    }
}

TEST_CASE("regime boundary located by bisection") {
  for (int n = 2; n <= 12; ++n) {
    double lo = 1e-6, hi = 4.0;
    // spiral iff lambda above the boundary
    const auto is_spiral = [n](double lambda) {
      return equilibrium_analysis(ModelParams{n, lambda, 1.0}).regime ==
             Regime::Spiral;
    };
    REQUIRE_FALSE(is_spiral(lo));
    REQUIRE(is_spiral(hi));
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (is_spiral(mid) ? hi : lo) = mid;
    }
    CHECK(0.5 * (lo + hi) ==
          Catch::Approx(std::sqrt(static_cast<double>(n) - 1.0) / 2.0)
              .margin(1e-12));
  }
}

TEST_CASE("region classification") {
  const ModelParams p{2, 2.0, 1.0};
  SECTION("point left of Gamma_1 in the upper half: Lambda4, both increasing") {
    // Gamma_1(0.5) = sqrt(0.75)/5 = 0.1732... > 0.1, so (0.1, 0.5) lies on
    // the kappa < 0 side; the vector field there has x' > 0 and y' > 0.
    const auto f = PrescribedFunction::linear(p.lambda);
    const auto [dx, dy] = rhs(p, f, {0.1, 0.5, +1});
    REQUIRE(dx > 0.0);
    REQUIRE(dy > 0.0);
    const auto r = classify_region(p, {0.1, 0.5, +1});
    CHECK(r.label == RegionLabel::Lambda4);
    CHECK(r.sign_dx == +1);
    CHECK(r.sign_dy == +1);
  }
  SECTION("point right of Gamma_1 in the upper half: Lambda1, y decreasing") {
    const auto r = classify_region(p, {1.0, 0.5, +1});
    CHECK(r.label == RegionLabel::Lambda1);
    CHECK(r.sign_dx == +1);
    CHECK(r.sign_dy == -1);
  }
  SECTION("Theta_{-1} has only Lambda+ and Lambda- for lambda >= 1") {
    CHECK(classify_region(p, {1.0, 0.5, -1}).label == RegionLabel::LambdaPlus);
    CHECK(classify_region(p, {1.0, -0.5, -1}).label ==
          RegionLabel::LambdaMinus);
  }
  SECTION("boundary labels") {
    const double gx = gamma_curve(p, +1, 0.3).value();
    CHECK(classify_region(p, {gx, 0.3, +1}).label == RegionLabel::OnGamma);
    CHECK(classify_region(p, {1.0, 0.0, +1}).label == RegionLabel::OnAxisY0);
  }
  SECTION("lambda < 1 labels") {
    const ModelParams q{2, 0.5, 1.0};
    CHECK(classify_region(q, {5.0, 0.4, +1}).label == RegionLabel::Lambda1P);
    CHECK(classify_region(q, {5.0, -0.8, +1}).label == RegionLabel::Lambda3P);
    CHECK(classify_region(q, {0.1, 0.4, -1}).label == RegionLabel::Lambda1M);
    CHECK(classify_region(q, {5.0, -0.8, -1}).label == RegionLabel::Lambda2M);
    CHECK(classify_region(q, {0.05, -0.8, -1}).label == RegionLabel::Lambda3M);
    CHECK(classify_region(q, {5.0, -0.2, -1}).label == RegionLabel::Lambda3M);
  }
  SECTION("lambda = 1 uses the wide layout with unbounded Gamma_1") {
    const ModelParams q{2, 1.0, 1.0};
    CHECK(gamma_curve(q, +1, -0.99).has_value());  // asymptotic to y = -1
    CHECK(classify_region(q, {10.0, -0.9, +1}).label == RegionLabel::Lambda2);
  }
}

TEST_CASE("region signs agree with the vector field on a grid") {
  const std::vector<ModelParams> matrix = {
      {2, 2.0, 1.0}, {2, 1.0, 1.0}, {2, 0.5, 1.0}, {3, 0.7, 1.0}, {5, 1.0, 1.0}};
  for (const auto& p : matrix) {
    const auto f = PrescribedFunction::linear(p.lambda);
    const double x_hi = 3.0 * std::max(1.0, p.cmc_cylinder_radius());
    for (const int eps : {+1, -1}) {
      for (int i = 1; i <= 200; ++i) {
        for (int j = 1; j < 200; ++j) {
          const double x = x_hi * i / 200.0;
          const double y = -1.0 + 2.0 * j / 200.0;
          const PhaseState s{x, y, eps};
          const auto r = classify_region(p, s);
          if (r.label == RegionLabel::OnAxisY0 ||
              r.label == RegionLabel::OnGamma)
            continue;
          const auto [dx, dy] = rhs(p, f, s);
          if (std::abs(dy) < 1e-12 || std::abs(dx) < 1e-12) continue;
          INFO("p=(" << p.n << "," << p.lambda << ") eps=" << eps << " x=" << x
                     << " y=" << y << " label=" << to_string(r.label));
          CHECK((dx > 0.0 ? +1 : -1) == r.sign_dx);
          CHECK((dy > 0.0 ? +1 : -1) == r.sign_dy);
        }
      }
    }
  }
}

TEST_CASE("region enumeration matches the classifier") {
  for (const auto& p :
       {ModelParams{2, 2.0, 1.0}, ModelParams{2, 0.5, 1.0}}) {
    for (const int eps : {+1, -1}) {
      const auto regions = enumerate_regions(p, eps);
      CHECK((eps == +1 ? regions.size() == 4
                       : (p.lambda >= 1.0 ? regions.size() == 2
                                          : regions.size() == 3)));
    }
  }
}
