#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "groth/limitshape.hpp"

using namespace groth;

TEST_CASE("cubic roots: residuals, conjugation, tau = 1 root at beta") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double xi = std::uniform_real_distribution<double>(0.01, 5.0)(rng);
    const double tau = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const Cubic c = critical_cubic(p, xi, tau);
    const auto roots = cubic_roots(p, xi, tau);
    for (const auto& z : roots)
      CHECK(std::abs(c.eval(z)) < 1e-12 * c.scale() * std::max(1.0, std::pow(std::abs(z), 3)));
    // nonreal roots come in conjugate pairs
    for (const auto& z : roots) {
      if (z.imag() == 0) continue;
      bool paired = false;
      for (const auto& w : roots) paired |= std::abs(w - std::conj(z)) < 1e-9;
      CHECK(paired);
    }
  }
  for (double xi : {0.3, 1.0, 2.5}) {
    const auto roots = cubic_roots(p, xi, 1.0);
    bool has_beta = false;
    for (const auto& z : roots) has_beta |= std::abs(z - std::complex<double>(-6, 0)) < 1e-8;
    CHECK(has_beta);
  }
  // degenerate leading coefficient at xi = 0 still yields roots
  CHECK(cubic_roots(p, 0.0, 0.5).size() >= 2);
}

TEST_CASE("zone classification") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  HeightSurface hs(p);
  // far right of the boundary: empty frozen zone Ia
  CHECK(hs.zone_at(hs.ximax() * 0.99, 0.4) == Zone::Ia);
  // a probe inside the liquid lens
  CHECK(hs.zone_at(1.0, 0.5) == Zone::Liquid);

  // deep negative beta: zone II crosses the whole strip
  AsymptoticParams p2(1.0 / 3, 1.0 / 5, -25);
  HeightSurface hs2(p2);
  for (double tau : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    bool has_ii = false;
    for (double xi = 0.05; xi < hs2.ximax(); xi += 0.05)
      has_ii |= (hs2.zone_at(xi, tau) == Zone::II);
    CHECK(has_ii);
  }
}

TEST_CASE("height gradient: frozen vertices and the liquid triangle") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -25);
  HeightSurface hs(p);
  bool saw_ii = false, saw_iii = false, saw_liquid = false;
  for (double tau : {0.25, 0.5, 0.95})  // zone III is a thin strip near tau = 1
    for (double xi = 0.005; xi < hs.ximax(); xi += 0.01) {
      const LiquidPoint lp = hs.classify(xi, tau);
      const auto [gx, gt] = height_gradient(lp, p);
      CHECK(gx >= -1.0 - 1e-12);
      CHECK(gx <= 1e-12);
      CHECK(gt >= -1.0 - 1e-12);
      CHECK(gt <= 1e-12);
      CHECK(gt >= gx - 1e-12);
      if (lp.zone == Zone::II) {
        CHECK(gx == -1.0);
        CHECK(gt == -1.0);
        saw_ii = true;
      }
      if (lp.zone == Zone::III) {
        CHECK(gx == -1.0);
        CHECK(gt == 0.0);
        saw_iii = true;
      }
      if (lp.zone == Zone::Liquid) {
        CHECK(gx < 0);
        CHECK(gx > -1);
        CHECK(gt > gx);
        saw_liquid = true;
      }
    }
  CHECK(saw_ii);
  CHECK(saw_iii);
  CHECK(saw_liquid);
}

TEST_CASE("height surface: range, monotonicity, mass") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  HeightSurface hs(p);
  for (double tau : {0.2, 0.5, 0.8}) {
    double prev = 1.1;
    for (double xi = 0.0; xi <= hs.ximax(); xi += hs.ximax() / 40) {
      const double h = hs.height(xi, tau);
      CHECK(h >= -1e-10);
      CHECK(h <= 1 + 1e-8);
      CHECK(h <= prev + 1e-8);  // weakly decreasing in xi
      prev = h;
    }
    CHECK(hs.height(0.0, tau) == doctest::Approx(1.0).epsilon(1e-6));  // all particles right of 0
  }
  // weakly decreasing in tau as well
  for (double xi : {0.3, 0.8, 1.4}) {
    double prev = 1.1;
    for (double tau = 0.05; tau <= 0.95; tau += 0.09) {
      const double h = hs.height(xi, tau);
      CHECK(h <= prev + 1e-8);
      prev = h;
    }
  }
  CHECK(hs.height(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("height self-convergence under arc refinement") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  HeightSurface coarse(p, 2000);
  HeightSurface fine(p, 8000);
  for (double tau : {0.3, 0.6})
    for (double xi : {0.2, 0.7, 1.3})
      CHECK(std::fabs(coarse.height(xi, tau) - fine.height(xi, tau)) < 1e-6);
}

TEST_CASE("frozen boundary parametrization") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  // z = beta lands on tau = 1 with positive xi
  const BoundaryPoint at_beta = boundary_at(p, p.beta);
  CHECK(at_beta.tau == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at_beta.xi > 0);
  // z -> infinity: xi -> 0 with tau < 1
  const BoundaryPoint far = boundary_at(p, 1e9);
  CHECK(std::fabs(far.xi) < 1e-6);
  CHECK(far.tau < 1);

  // boundary points are double critical points: P = P' = 0
  HeightSurface hs(p);
  int checked = 0;
  for (const auto& bp : hs.physical_boundary()) {
    if (checked >= 50) break;
    const Cubic c = critical_cubic(p, bp.xi, bp.tau);
    const double scale = c.scale() * std::max(1.0, std::pow(std::fabs(bp.z), 3));
    CHECK(std::fabs(c.eval(bp.z)) < 1e-8 * scale);
    CHECK(std::abs(c.deriv(std::complex<double>(bp.z, 0))) < 1e-6 * scale);
    ++checked;
  }
  CHECK(checked > 10);

  // slope identity dtau/dz = -(1 - z/beta) dxi/dz along the curve
  for (double z : {-9.0, -2.0, 0.7, 9.0}) {
    const double h = 1e-6;
    const BoundaryPoint a = boundary_at(p, z - h), b = boundary_at(p, z + h);
    const double dxi = (b.xi - a.xi) / (2 * h), dtau = (b.tau - a.tau) / (2 * h);
    CHECK(dtau == doctest::Approx(-(1 - z / p.beta) * dxi).epsilon(1e-4));
  }
  CHECK_THROWS_AS(boundary_at(p, p.y), PoleProximity);
}

TEST_CASE("cross-section solve") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  HeightSurface hs(p);
  CHECK(hs.solve_L(1.0) == 0.0);
  double prev = 1e9;
  for (double tau = 0.0; tau <= 1.0; tau += 0.1) {
    const double L = hs.solve_L(tau);
    CHECK(L <= prev + 1e-9);  // weakly decreasing
    prev = L;
    if (tau > 0 && tau < 1) CHECK(hs.height(L, tau) == doctest::Approx(tau).epsilon(1e-6));
  }
  // L(0) is the right edge of the tau = 0 frozen boundary: h vanishes there
  const double L0 = hs.solve_L(0.0);
  CHECK(hs.height(L0 + 1e-6, 0.0) < 1e-7);
  CHECK(hs.height(L0 - 0.05, 0.0) > 1e-7);
  // inverse solve agrees
  const double tau_mid = hs.solve_tau(hs.solve_L(0.5));
  CHECK(tau_mid == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("staircase regime: cross-section slope in zone II") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -25);
  HeightSurface hs(p);
  const double tau = 0.5, dt = 1e-3;
  CHECK(hs.zone_at(hs.solve_L(tau), tau) == Zone::II);
  const double dL = (hs.solve_L(tau + dt) - hs.solve_L(tau - dt)) / (2 * dt);
  // dL/dtau = -2 on the staircase stretch, i.e. dtau/dxi = -1/2 along the
  // cross-section; the rotated shape is horizontal there
  CHECK(dL == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("shape_W parametrization and Lipschitz bound") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -25);
  ShapeGrid sg = compute_shape(p, 120, 0.05, 2);
  CHECK(sg.u.back() == doctest::Approx(-1.0).epsilon(1e-9));   // tau = 1 endpoint
  CHECK(sg.W.back() == doctest::Approx(1.0).epsilon(1e-9));
  int flat = 0;
  for (std::size_t i = 0; i + 1 < sg.u.size(); ++i) {
    const double du = sg.u[i + 1] - sg.u[i];
    const double dW = sg.W[i + 1] - sg.W[i];
    if (std::fabs(du) > 1e-12) CHECK(std::fabs(dW / du) <= 1 + 1e-6);
    if (std::fabs(dW) < 0.2 * std::fabs(du)) ++flat;
  }
  CHECK(flat > 5);  // the horizontal staircase facet
  for (double w : sg.W) CHECK(w >= -1e-9);
  for (std::size_t i = 0; i < sg.u.size(); ++i) CHECK(sg.W[i] >= std::fabs(sg.u[i]) - 1e-7);
}

TEST_CASE("finite-difference consistency of the L and W differential relations") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  HeightSurface hs(p);
  const double tau = 0.5, dt = 1e-4;
  const double L = hs.solve_L(tau);
  const LiquidPoint lp = hs.classify(L, tau);
  REQUIRE(lp.zone == Zone::Liquid);
  const double arg_z = std::arg(lp.z), arg_zb = std::arg(lp.z - p.beta);
  const double expect_L = -(std::numbers::pi - arg_zb + arg_z) / arg_z;
  const double dL = (hs.solve_L(tau + dt) - hs.solve_L(tau - dt)) / (2 * dt);
  CHECK(dL == doctest::Approx(expect_L).epsilon(1e-3));
  // W'(u) from the parametrization
  const double expect_W = (std::numbers::pi - arg_zb - arg_z) / (std::numbers::pi - arg_zb + arg_z);
  const double du = (hs.solve_L(tau + dt) - 1) - (hs.solve_L(tau - dt) - 1);
  const double dW = du + 2 * (2 * dt);
  CHECK(dW / du == doctest::Approx(expect_W).epsilon(1e-3));
}

TEST_CASE("burgers residual: order of accuracy and magnitude") {
  AsymptoticParams p(1.0 / 3, 1.0 / 5, -6);
  HeightSurface hs(p);
  const double xi = 1.0, tau = 0.5;
  const double r1 = burgers_residual(hs, xi, tau, 2e-3);
  const double r2 = burgers_residual(hs, xi, tau, 1e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.35));
  CHECK(burgers_residual(hs, xi, tau, 1e-4) < 1e-4);
  CHECK_THROWS_AS(burgers_residual(hs, hs.ximax() * 0.99, 0.4, 1e-3), StencilLeavesLiquid);
}

TEST_CASE("cusp point and its discriminant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
    const double y = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
    if (x * y >= 1) continue;
    const double beta = -std::uniform_real_distribution<double>(0.1, 30.0)(rng);
    AsymptoticParams p(x, y, beta);
    const CuspPoint cp = cusp_point(p);
    CHECK(cp.discriminant < 0);  // exactly one real root
    const double closed = cusp_discriminant_closed_form(p);
    CHECK(std::fabs(cp.discriminant - closed) <= 1e-10 * std::fabs(closed));
  }
  // beta -> -infinity: the cusp escapes along the diagonal xi = 1 - tau
  double prev_gap = 1e9;
  for (double beta : {-10.0, -100.0, -1000.0}) {
    AsymptoticParams p(1.0 / 3, 1.0 / 5, beta);
    const CuspPoint cp = cusp_point(p);
    const double ratio = cp.xi / (1 - cp.tau);
    CHECK(std::fabs(ratio - 1) < prev_gap + 1e-12);
    prev_gap = std::fabs(ratio - 1);
  }
  CHECK(prev_gap < 0.05);
}

TEST_CASE("vkls curve") {
  CHECK(vkls_omega(0) == doctest::Approx(4 / std::numbers::pi));
  CHECK(vkls_omega(2) == doctest::Approx(2.0));
  CHECK(vkls_omega(-2.5) == doctest::Approx(2.5));
  for (double u = -1.9; u < 1.9; u += 0.1) CHECK(vkls_omega(u) > std::fabs(u));
}

TEST_CASE("positive-beta conjectural pipeline stays well-defined") {
  CHECK_THROWS_AS(AsymptoticParams(1.0 / 3, 1.0 / 5, 1.0 / 12), InvalidRegime);
  AsymptoticParams p(1.0 / 3, 1.0 / 5, 1.0 / 12, /*allow_pos=*/true);
  HeightSurface hs(p);
  const double L = hs.solve_L(0.5);
  CHECK(L >= 0);
  CHECK(hs.height(L, 0.5) == doctest::Approx(0.5).epsilon(1e-6));
}
