#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

#include "groth/errors.hpp"

namespace groth {

// Homogeneous asymptotic regime: x, y > 0, xy < 1, beta < 0. The
// allow_positive_beta flag runs the identical pipeline for 0 < beta <
// min(1/x, y); its outputs are conjectural and callers should label them so.
struct AsymptoticParams {
  double x, y, beta;
  bool allow_positive_beta = false;

  AsymptoticParams(double x_, double y_, double beta_, bool allow_pos = false)
      : x(x_), y(y_), beta(beta_), allow_positive_beta(allow_pos) {
    if (!(x > 0) || !(y > 0) || !(x * y < 1))
      throw InvalidRegime("need x > 0, y > 0, xy < 1");
    if (beta == 0) throw InvalidRegime("beta = 0 degenerates the tilted process");
    if (beta > 0 && !allow_pos)
      throw InvalidRegime("beta > 0 requires allow_positive_beta");
    if (beta > 0 && beta >= std::min(1.0 / x, y))
      throw InvalidRegime("positive beta must stay below min(1/x, y)");
  }
};

// ---------------------------------------------------------------------------
// Critical cubic
// ---------------------------------------------------------------------------

struct Cubic {
  double c3, c2, c1, c0;  // c3 z^3 + c2 z^2 + c1 z + c0

  double eval(double z) const { return ((c3 * z + c2) * z + c1) * z + c0; }
  std::complex<double> eval(std::complex<double> z) const {
    return ((c3 * z + c2) * z + c1) * z + c0;
  }
  std::complex<double> deriv(std::complex<double> z) const {
    return (3.0 * c3 * z + 2.0 * c2) * z + c1;
  }
  double scale() const {
    return std::max({std::fabs(c3), std::fabs(c2), std::fabs(c1), std::fabs(c0)});
  }
  // standard cubic discriminant; negative iff one real and two conjugate roots
  double discriminant() const {
    return 18 * c3 * c2 * c1 * c0 - 4 * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
           4 * c3 * c1 * c1 * c1 - 27 * c3 * c3 * c0 * c0;
  }
};

// critical-point equation of the kernel action at (xi, tau)
inline Cubic critical_cubic(const AsymptoticParams& p, double xi, double tau) {
  const double x = p.x, y = p.y, b = p.beta;
  Cubic c;
  c.c3 = xi * x;
  c.c2 = -(xi + b * x * (xi + tau - 1) + (xi + 1) * x * y - 1);
  c.c1 = b * (xi + tau + xi * x * y + tau * x * y - 2) + xi * y;
  c.c0 = -b * y * (xi + tau - 1);
  return c;
}

// Roots of the critical cubic: closed form plus one Newton polish per root.
// Degenerates to the quadratic when the leading coefficient vanishes (xi = 0).
inline std::vector<std::complex<double>> cubic_roots(const AsymptoticParams& p, double xi,
                                                     double tau) {
  using cplx = std::complex<double>;
  const Cubic c = critical_cubic(p, xi, tau);
  const double scale = c.scale();
  if (scale == 0) throw DegenerateAllZero("all cubic coefficients vanish");
  std::vector<cplx> roots;
  if (std::fabs(c.c3) < 1e-14 * scale) {
    if (std::fabs(c.c2) < 1e-14 * scale) {
      if (std::fabs(c.c1) < 1e-14 * scale)
        throw DegenerateAllZero("degenerate linear equation");
      roots = {cplx(-c.c0 / c.c1, 0.0)};
    } else {
      const cplx disc = cplx(c.c1 * c.c1 - 4 * c.c2 * c.c0, 0.0);
      const cplx sq = std::sqrt(disc);
      // Citardauq pairing avoids cancellation
      const cplx q = -0.5 * (c.c1 + (c.c1 >= 0 ? 1.0 : -1.0) * sq);
      roots = {q / c.c2, (q == 0.0 ? cplx(0.0) : c.c0 / q)};
    }
  } else {
    // depressed cubic t^3 + pt + q, z = t - c2/(3 c3)
    const double a = c.c2 / c.c3, b2 = c.c1 / c.c3, d = c.c0 / c.c3;
    const double pp = b2 - a * a / 3.0;
    const double qq = 2.0 * a * a * a / 27.0 - a * b2 / 3.0 + d;
    const cplx inner = std::sqrt(cplx(qq * qq / 4.0 + pp * pp * pp / 27.0, 0.0));
    cplx u = std::pow(-qq / 2.0 + inner, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) u = std::pow(-qq / 2.0 - inner, 1.0 / 3.0);
    const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
      cplx uk = u;
      for (int i = 0; i < k; ++i) uk *= omega;
      const cplx tk = (std::abs(uk) < 1e-300) ? cplx(0.0) : uk - pp / (3.0 * uk);
      roots.push_back(tk - a / 3.0);
    }
  }
  for (auto& z : roots) {
    for (int it = 0; it < 2; ++it) {
      const cplx dz = c.deriv(z);
      if (std::abs(dz) < 1e-300) break;
      z -= c.eval(z) / dz;
    }
  }
  // real-coefficient symmetry: snap near-real roots, pair the conjugates
  if (roots.size() == 3 && c.discriminant() < 0) {
    std::sort(roots.begin(), roots.end(),
              [](cplx l, cplx r) { return std::fabs(l.imag()) < std::fabs(r.imag()); });
    roots[0] = cplx(roots[0].real(), 0.0);
    const cplx z = 0.5 * (roots[1] + std::conj(roots[2]));
    roots[1] = z;
    roots[2] = std::conj(z);
  } else {
    for (auto& z : roots)
      if (std::fabs(z.imag()) < 1e-9 * std::max(1.0, std::abs(z)))
        z = cplx(z.real(), 0.0);
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Frozen boundary parametrization
// ---------------------------------------------------------------------------

struct BoundaryPoint {
  double z, xi, tau;
};

// xi(z), tau(z) from the double-critical-point equations; poles at z = y, 1/x.
inline BoundaryPoint boundary_at(const AsymptoticParams& p, double z) {
  const double x = p.x, y = p.y, b = p.beta;
  const double den = (1 - x * z) * (1 - x * z) * (y - z) * (y - z);
  if (std::fabs(den) < 1e-13) throw PoleProximity("z too close to a parametrization pole");
  const double xi = (1 - x * y) * (y * (b + x * z * z - 2 * z) + z * z * (1 - b * x)) / den;
  const double tau = 1 + (z - b) * (z - b) * (1 - x * y) * (y - x * z * z) / ((-b) * den);
  return {z, xi, tau};
}

inline std::vector<BoundaryPoint> frozen_boundary(const AsymptoticParams& p,
                                                  const std::vector<double>& zgrid) {
  std::vector<BoundaryPoint> out;
  for (double z : zgrid) {
    BoundaryPoint bp = boundary_at(p, z);
    if (bp.xi >= 0 && bp.tau >= 0 && bp.tau <= 1) out.push_back(bp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zones, gradient, height surface
// ---------------------------------------------------------------------------

enum class Zone { Ia, Ib, II, III, Liquid };

struct LiquidPoint {
  double xi, tau;
  std::complex<double> z;  // upper-half-plane critical point, or the real
                           // double-root continuation in a frozen zone
  Zone zone;
};

inline std::pair<double, double> height_gradient(const LiquidPoint& lp,
                                                 const AsymptoticParams& p) {
  switch (lp.zone) {
    case Zone::Ia:
    case Zone::Ib:
      return {0.0, 0.0};
    case Zone::II:
      return {-1.0, -1.0};
    case Zone::III:
      return {-1.0, 0.0};
    case Zone::Liquid: {
      const double arg_z = std::arg(lp.z);
      const double arg_zb = std::arg(lp.z - p.beta);
      return {-arg_z / std::numbers::pi, (arg_zb - arg_z) / std::numbers::pi};
    }
  }
  return {0.0, 0.0};
}

// Limit-shape surface of the two-dimensional process. Per-tau rows are
// decomposed into liquid/frozen stretches using the boundary parametrization;
// the height integrates the particle density -d_xi h = Arg z_c / pi from
// ximax (zone Ia, height 0) leftward.
class HeightSurface {
 public:
  explicit HeightSurface(const AsymptoticParams& p, int arc_samples = 4000)
      : p_(p) {
    sample_arcs(arc_samples);
    double ximax = 0;
    for (const auto& bp : arcs_)
      if (bp.tau >= 0 && bp.tau <= 1 && bp.xi >= 0) ximax = std::max(ximax, bp.xi);
    if (ximax == 0) throw BoundaryDetectionFailed("no physical frozen boundary found");
    ximax_ = 1.5 * ximax;
  }

  const AsymptoticParams& params() const { return p_; }
  double ximax() const { return ximax_; }

  const std::vector<BoundaryPoint>& boundary_arcs() const { return arcs_; }

  std::vector<BoundaryPoint> physical_boundary() const {
    std::vector<BoundaryPoint> out;
    for (const auto& bp : arcs_)
      if (bp.xi >= 0 && bp.tau >= 0 && bp.tau <= 1) out.push_back(bp);
    return out;
  }

  // particle density in [0, 1]; equals Arg z_c / pi in the liquid region
  double density(double xi, double tau) const {
    const LiquidPoint lp = classify(xi, tau);
    if (lp.zone == Zone::Liquid) return std::arg(lp.z) / std::numbers::pi;
    return (lp.zone == Zone::II || lp.zone == Zone::III) ? 1.0 : 0.0;
  }

  LiquidPoint classify(double xi, double tau) const {
    const Row& row = row_for(tau);
    const Stretch& st = row.stretch_at(xi);
    if (st.zone == Zone::Liquid) {
      auto roots = cubic_roots(p_, xi, tau);
      std::complex<double> best = roots.front();
      for (const auto& z : roots)
        if (z.imag() > best.imag()) best = z;
      return {xi, tau, best, Zone::Liquid};
    }
    return {xi, tau, {st.zstar, 0.0}, st.zone};
  }

  double height(double xi, double tau) const {
    const Row& row = row_for(tau);
    return row_height(row, tau, xi);
  }

  // cross-section solve h(L(tau), tau) = tau; L(1) = 0 by continuity, and at
  // tau = 0 the strict comparison picks inf{xi : h(xi, 0) = 0}
  double solve_L(double tau) const {
    if (tau >= 1.0) return 0.0;
    const Row& row = row_for(tau);
    if (row_height(row, tau, 0.0) < tau - 1e-7)
      throw NoRoot("height at xi = 0 fell below tau");
    double lo = 0.0, hi = ximax_;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (row_height(row, tau, mid) > tau ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  // inverse cross-section solve h(xi, tau) = tau in tau at fixed xi
  double solve_tau(double xi) const {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (height(xi, mid) >= mid ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  Zone zone_at(double xi, double tau) const { return row_for(tau).stretch_at(xi).zone; }

 private:
  struct Stretch {
    double lo, hi;
    Zone zone;
    double zstar;    // representative double root for frozen stretches
    double cum_hi;   // height at the right endpoint
  };

  struct Row {
    double tau;
    std::vector<Stretch> stretches;  // ascending, covering [0, ximax]

    const Stretch& stretch_at(double xi) const {
      for (const auto& st : stretches)
        if (xi <= st.hi || &st == &stretches.back()) return st;
      return stretches.back();
    }
  };

  void sample_arcs(int samples) {
    const double half_pi = std::numbers::pi / 2;
    arcs_.clear();
    thetas_.clear();
    for (int i = 1; i < samples; ++i) {
      const double th = -half_pi + std::numbers::pi * i / samples;
      const double z = std::tan(th);
      if (near_pole(z)) continue;
      arcs_.push_back(boundary_at(p_, z));
      thetas_.push_back(th);
    }
  }

  bool near_pole(double z) const {
    return std::fabs(z - p_.y) < 1e-9 || std::fabs(z - 1.0 / p_.x) < 1e-9;
  }

  // boundary crossings of the horizontal line tau = tau0, via sign changes of
  // tau(z) - tau0 along the arc samples, refined by bisection in theta
  std::vector<BoundaryPoint> crossings(double tau0) const {
    std::vector<BoundaryPoint> out;
    for (std::size_t i = 0; i + 1 < arcs_.size(); ++i) {
      const double za = arcs_[i].z, zb = arcs_[i + 1].z;
      if (pole_between(za, zb)) continue;
      const double fa = arcs_[i].tau - tau0, fb = arcs_[i + 1].tau - tau0;
      if (fa == 0) {
        out.push_back(arcs_[i]);
        continue;
      }
      if (fa * fb >= 0) continue;
      double lo = thetas_[i], hi = thetas_[i + 1];
      double flo = fa;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const BoundaryPoint bp = boundary_at(p_, std::tan(mid));
        if ((bp.tau - tau0) * flo <= 0)
          hi = mid;
        else {
          lo = mid;
          flo = bp.tau - tau0;
        }
      }
      out.push_back(boundary_at(p_, std::tan(0.5 * (lo + hi))));
    }
    return out;
  }

  bool pole_between(double za, double zb) const {
    const double lo = std::min(za, zb), hi = std::max(za, zb);
    return (p_.y > lo && p_.y < hi) || (1.0 / p_.x > lo && 1.0 / p_.x < hi);
  }

  Zone frozen_zone(double zstar, bool liquid_to_the_right) const {
    if (zstar < p_.beta) return Zone::III;
    if (zstar < 0) return Zone::II;
    return liquid_to_the_right ? Zone::Ib : Zone::Ia;
  }

  Row build_row(double tau) const {
    std::vector<double> cuts;
    std::vector<double> cut_z;
    for (const auto& bp : crossings(tau)) {
      if (bp.xi <= 1e-12 || bp.xi >= ximax_) continue;
      cuts.push_back(bp.xi);
      cut_z.push_back(bp.z);
    }
    std::vector<std::size_t> order(cuts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cuts[a] < cuts[b];
    });

    Row row;
    row.tau = tau;
    double lo = 0.0;
    for (std::size_t k = 0; k <= order.size(); ++k) {
      const double hi = (k == order.size()) ? ximax_ : cuts[order[k]];
      if (hi - lo > 1e-12) {
        Stretch st;
        st.lo = lo;
        st.hi = hi;
        const double mid = 0.5 * (lo + hi);
        const double disc = critical_cubic(p_, mid, tau).discriminant();
        // the discriminant must keep its sign on the whole stretch, otherwise
        // a boundary crossing was missed by the arc scan
        for (double frac : {0.12, 0.37, 0.81}) {
          const double probe = lo + frac * (hi - lo);
          const double d2 = critical_cubic(p_, probe, tau).discriminant();
          if (d2 * disc < 0 && std::fabs(d2) > 1e-11 && std::fabs(disc) > 1e-11)
            throw BoundaryDetectionFailed("inconsistent discriminant signs in a stretch");
        }
        if (disc < 0) {
          st.zone = Zone::Liquid;
          st.zstar = 0;
        } else {
          // inherit the double root from an adjacent boundary point
          double zstar;
          if (k > 0)
            zstar = cut_z[order[k - 1]];
          else if (k < order.size())
            zstar = cut_z[order[k]];
          else
            throw BoundaryDetectionFailed("fully frozen row with no boundary crossing");
          st.zone = frozen_zone(zstar, false);
          st.zstar = zstar;
        }
        row.stretches.push_back(st);
      }
      lo = hi;
    }
    // resolve Ia vs Ib: Ib has liquid somewhere to its right
    bool liquid_right = false;
    for (auto it = row.stretches.rbegin(); it != row.stretches.rend(); ++it) {
      if (it->zone == Zone::Ia && liquid_right) it->zone = Zone::Ib;
      if (it->zone == Zone::Liquid) liquid_right = true;
    }
    // cumulative heights from the right edge
    double cum = 0;
    for (auto it = row.stretches.rbegin(); it != row.stretches.rend(); ++it) {
      it->cum_hi = cum;
      cum += stretch_mass(*it, tau);
    }
    return row;
  }

  double stretch_mass(const Stretch& st, double tau) const {
    switch (st.zone) {
      case Zone::Ia:
      case Zone::Ib:
        return 0.0;
      case Zone::II:
      case Zone::III:
        return st.hi - st.lo;
      case Zone::Liquid:
        return simpson(st.lo, st.hi, tau);
    }
    return 0.0;
  }

  double liquid_density(double xi, double tau) const {
    auto roots = cubic_roots(p_, xi, tau);
    for (const auto& z : roots)
      if (z.imag() > 0) return std::arg(z) / std::numbers::pi;
    // grazing the boundary: double root on the real axis
    double best = 0;
    for (const auto& z : roots) best = std::max(best, z.real() < 0 ? 1.0 : 0.0);
    return best;
  }

  double simpson(double a, double b, double tau) const {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole,
            int depth) -> double {
      const double m1 = lo + (hi - lo) / 4, m2 = hi - (hi - lo) / 4;
      const double f1 = liquid_density(m1, tau), f2 = liquid_density(m2, tau);
      const double left = (hi - lo) / 12 * (flo + 4 * f1 + fmid);
      const double right = (hi - lo) / 12 * (fmid + 4 * f2 + fhi);
      if (depth <= 0 || std::fabs(left + right - whole) < 1e-10)
        return left + right + (left + right - whole) / 15;
      const double mid = 0.5 * (lo + hi);
      return rec(lo, mid, flo, f1, fmid, left, depth - 1) +
             rec(mid, hi, fmid, f2, fhi, right, depth - 1);
    };
    if (b - a < 1e-14) return 0;
    const double mid = 0.5 * (a + b);
    const double fa = liquid_density(a, tau), fm = liquid_density(mid, tau),
                 fb = liquid_density(b, tau);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, 28);
  }

  double row_height(const Row& row, double tau, double xi) const {
    if (xi >= ximax_) return 0.0;
    double h = 0;
    for (const auto& st : row.stretches) {
      if (xi >= st.hi) continue;
      const double from = std::max(xi, st.lo);
      switch (st.zone) {
        case Zone::Ia:
        case Zone::Ib:
          h = st.cum_hi;
          break;
        case Zone::II:
        case Zone::III:
          h = st.cum_hi + (st.hi - from);
          break;
        case Zone::Liquid:
          h = st.cum_hi + simpson(from, st.hi, tau);
          break;
      }
      break;
    }
    return h;
  }

  const Row& row_for(double tau) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rows_.find(tau);
    if (it == rows_.end()) it = rows_.emplace(tau, build_row(tau)).first;
    return it->second;
  }

  AsymptoticParams p_;
  double ximax_ = 0;
  std::vector<BoundaryPoint> arcs_;
  std::vector<double> thetas_;
  mutable std::map<double, Row> rows_;
  mutable std::mutex mu_;
};

// ---------------------------------------------------------------------------
// Cross-section shapes
// ---------------------------------------------------------------------------

struct ShapeGrid {
  std::vector<double> tau;       // grid in [0, 1]
  std::vector<double> L;         // L(tau)
  std::vector<double> u, W;      // rotated shape, u = L - 1, W = L - 1 + 2 tau
  std::vector<double> xi_grid;
  std::vector<std::vector<double>> H;  // H[row][col] = h(xi_grid[col], tau[row])
  std::vector<BoundaryPoint> boundary;
};

inline std::vector<std::pair<double, double>> shape_W(const ShapeGrid& sg) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < sg.tau.size(); ++i) out.emplace_back(sg.u[i], sg.W[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

// residual of d_xi z_c = (1 - z_c/beta) d_tau z_c by central differences
inline double burgers_residual(const HeightSurface& hs, double xi, double tau, double h) {
  auto liquid_root = [&](double xi_, double tau_) {
    const LiquidPoint lp = hs.classify(xi_, tau_);
    if (lp.zone != Zone::Liquid)
      throw StencilLeavesLiquid("finite-difference stencil leaves the liquid region");
    return lp.z;
  };
  const auto zc = liquid_root(xi, tau);
  const auto dxi = (liquid_root(xi + h, tau) - liquid_root(xi - h, tau)) / (2 * h);
  const auto dtau = (liquid_root(xi, tau + h) - liquid_root(xi, tau - h)) / (2 * h);
  return std::abs(dxi - (1.0 - zc / hs.params().beta) * dtau);
}

struct CuspPoint {
  double xi, tau, z;
  double discriminant;  // of the cusp cubic, matches the closed form
};

// unique real root of the cusp cubic, mapped through the boundary curve
inline CuspPoint cusp_point(const AsymptoticParams& p) {
  const double x = p.x, y = p.y, b = p.beta;
  Cubic c;
  c.c3 = x * (1 + x * y - x * b);
  c.c2 = -3 * x * y;
  c.c1 = 3 * x * y * b;
  c.c0 = y * (y - b - x * y * b);
  const double disc = c.discriminant();
  // one real root since the discriminant is negative; bisect a sign bracket
  double lo = -1, hi = 1;
  const double dir = c.c3 > 0 ? 1.0 : -1.0;
  while (dir * c.eval(lo) > 0) lo *= 2;
  while (dir * c.eval(hi) < 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dir * c.eval(mid) <= 0 ? lo : hi) = mid;
  }
  const double z = 0.5 * (lo + hi);
  const BoundaryPoint bp = boundary_at(p, z);
  return {bp.xi, bp.tau, z, disc};
}

inline double cusp_discriminant_closed_form(const AsymptoticParams& p) {
  const double x = p.x, y = p.y, b = p.beta;
  const double f = (1 - x * b) * (1 - x * y) * (y - b);
  return -27.0 * x * x * y * y * f * f;
}

// Vershik-Kerov-Logan-Shepp curve
inline double vkls_omega(double u) {
  if (std::fabs(u) >= 2) return std::fabs(u);
  return 2.0 / std::numbers::pi * (u * std::asin(u / 2) + std::sqrt(4 - u * u));
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

inline ShapeGrid compute_shape(const AsymptoticParams& p, int tau_steps, double xi_step,
                               int threads = 1) {
  HeightSurface hs(p);
  ShapeGrid sg;
  for (int i = 0; i <= tau_steps; ++i) sg.tau.push_back(double(i) / tau_steps);
  sg.L.assign(sg.tau.size(), 0.0);
  std::vector<double> xi;
  for (double v = 0; v < hs.ximax() + xi_step / 2; v += xi_step) xi.push_back(v);
  sg.xi_grid = xi;
  sg.H.assign(sg.tau.size(), std::vector<double>(xi.size(), 0.0));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= sg.tau.size()) return;
      const double tau = sg.tau[i];
      sg.L[i] = hs.solve_L(tau);
      for (std::size_t c = 0; c < xi.size(); ++c) sg.H[i][c] = hs.height(xi[c], tau);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < sg.tau.size(); ++i) {
    sg.u.push_back(sg.L[i] - 1);
    sg.W.push_back(sg.L[i] - 1 + 2 * sg.tau[i]);
  }
  sg.boundary = hs.physical_boundary();
  return sg;
}

}  // namespace groth
