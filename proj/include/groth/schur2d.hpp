#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "groth/errors.hpp"
#include "groth/measures.hpp"

namespace groth {

// ---------------------------------------------------------------------------
// Two-dimensional process
// ---------------------------------------------------------------------------

// Triangular-indexed particle array x[m][j]: level m (top to bottom), each
// row strictly decreasing, consecutive levels dropping by 0 or 1 per particle.
struct Config2D {
  std::vector<std::vector<long>> x;

  int n() const { return int(x.size()); }

  bool valid() const {
    const int nn = n();
    for (const auto& row : x)
      if (int(row.size()) != nn) return false;
    for (const auto& row : x) {
      for (int j = 0; j + 1 < nn; ++j)
        if (row[j] <= row[j + 1]) return false;
      if (!row.empty() && row.back() < 0) return false;
    }
    for (int m = 0; m + 1 < nn; ++m)
      for (int j = 0; j < nn; ++j) {
        const long d = x[m][j] - x[m + 1][j];
        if (d != 0 && d != 1) return false;
      }
    return true;
  }
};

// All valid configurations with x[m][0] <= cap.
inline void enumerate_configs_2d(int n, long cap,
                                 const std::function<void(const Config2D&)>& emit) {
  if (cap < n - 1) throw IndexOutOfRange("cap must be at least N-1");
  Config2D cfg;
  cfg.x.assign(std::size_t(n), std::vector<long>(std::size_t(n)));
  // top level: strictly decreasing n-subsets of {0..cap}
  std::function<void(int, long)> fill_top = [&](int j, long hi) {
    if (j == n) {
      // deeper levels: per-particle drops of 0/1 keeping rows strictly decreasing
      std::function<void(int, int)> fill_level = [&](int m, int jj) {
        if (m == n) {
          emit(cfg);
          return;
        }
        if (jj == n) {
          fill_level(m + 1, 0);
          return;
        }
        for (long d = 0; d <= 1; ++d) {
          const long v = cfg.x[m - 1][jj] - d;
          if (v < 0) continue;
          if (jj > 0 && v >= cfg.x[m][jj - 1]) continue;
          cfg.x[m][jj] = v;
          fill_level(m, jj + 1);
        }
      };
      fill_level(1, 0);
      return;
    }
    for (long v = hi; v >= n - 1 - j; --v) {
      cfg.x[0][j] = v;
      fill_top(j + 1, v - 1);
    }
  };
  fill_top(0, cap);
  }

// W^2d = det[Phi_i(x^1_j)] (prod_m det[T_{beta_m}]) det[Psi_i(x^N_j)], with the
// transfer determinants evaluated as (-beta_m)^{|x^m|-|x^{m+1}|} on interlacing
// configurations. Invalid interlacing gives weight 0.
inline Rational weight_2d(const TiltedEnsemble& e, const Config2D& cfg) {
  const int n = e.n;
  if (cfg.n() != n || !cfg.valid()) return Rational(0);
  RatMatrix top(n, n), bot(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      top.at(i, j) = e.phi[i](cfg.x.front()[j]);
      bot.at(i, j) = e.psi[i](cfg.x.back()[j]);
    }
  Rational w = top.det() * bot.det();
  for (int m = 0; m + 1 < n; ++m) {
    long drop = 0;
    for (int j = 0; j < n; ++j) drop += cfg.x[m][j] - cfg.x[m + 1][j];
    w *= rat_pow(-e.beta(m + 1), drop);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Eynard-Mehta kernel
// ---------------------------------------------------------------------------

struct KernelQuery {
  long a;  // position at level t
  int t;   // level in 1..N
  long b;  // position at level s
  int s;
};

// K(a,t;b,s) = -1_{t>s} (T_{beta_s} * ... * T_{beta_{t-1}})(b, a)
//            + sum_{ij} Ginv_{ji} D^{[1,t)}Phi_i(a) D^{[s,N) dagger}Psi_j(b)
class EmKernel {
 public:
  explicit EmKernel(TiltedEnsemble e) : e_(std::move(e)) {
    RatMatrix g = gram_matrix(e_);
    try {
      ginv_ = g.inverse();
    } catch (const SingularGram&) {
      throw SingularGram("gram matrix is singular; use a confluent descriptor basis");
    }
    const int n = e_.n;
    dphi_.resize(std::size_t(n) + 1);
    ddpsi_.resize(std::size_t(n) + 1);
    dphi_[1] = e_.phi;
    for (int t = 2; t <= n; ++t) {
      dphi_[t] = dphi_[t - 1];
      for (auto& f : dphi_[t]) f = f.apply_D(e_.beta(t - 1));
    }
    ddpsi_[n] = e_.psi;
    for (int s = n - 1; s >= 1; --s) {
      ddpsi_[s] = ddpsi_[s + 1];
      for (auto& f : ddpsi_[s]) f = f.apply_D_dagger(e_.beta(s));
    }
  }

  const TiltedEnsemble& ensemble() const { return e_; }

  Rational operator()(const KernelQuery& q) const {
    const int n = e_.n;
    if (q.t < 1 || q.t > n || q.s < 1 || q.s > n)
      throw IndexOutOfRange("kernel level out of range");
    Rational val(0);
    if (q.t > q.s) val -= transfer_convolution(q.s, q.t, q.b, q.a);
    for (int i = 0; i < n; ++i) {
      const Rational phi_val = dphi_[std::size_t(q.t)][std::size_t(i)](q.a);
      if (phi_val == 0) continue;
      for (int j = 0; j < n; ++j)
        val += ginv_.at(j, i) * phi_val * ddpsi_[std::size_t(q.s)][std::size_t(j)](q.b);
    }
    return val;
  }

 private:
  // (T_{beta_s} * ... * T_{beta_{t-1}})(y, x) = e_{y-x}(-beta_s, ..., -beta_{t-1})
  Rational transfer_convolution(int s, int t, long y, long x) const {
    const long m = y - x;
    const long len = t - s;
    if (m < 0 || m > len) return Rational(0);
    // elementary symmetric polynomial via the running product expansion
    std::vector<Rational> e(std::size_t(len) + 1);
    e[0] = 1;
    for (int r = s; r < t; ++r) {
      const Rational v = -e_.beta(r);
      for (long k = std::min<long>(r - s + 1, m); k >= 1; --k) e[std::size_t(k)] += v * e[std::size_t(k) - 1];
    }
    return e[std::size_t(m)];
  }

  TiltedEnsemble e_;
  RatMatrix ginv_;
  std::vector<std::vector<FnDescriptor>> dphi_;   // [t][i] = D^{[1,t)} phi_i
  std::vector<std::vector<FnDescriptor>> ddpsi_;  // [s][j] = D^{[s,N) dagger} psi_j
};

// ---------------------------------------------------------------------------
// Double contour integral kernel for the Grothendieck Schur process
// ---------------------------------------------------------------------------

// K(a,t;b,s) = (2 pi i)^{-2} oint oint dz dw/(z-w) w^{b-N}/z^{a-N+1} F_t(z)/F_s(w)
// with F_t(z) = prod_i (1 - y_i/z)/(1 - z x_i) prod_{r>=t} 1/(1 - beta_r/z).
// Trapezoidal quadrature on circles; spectrally accurate on the annuli.
inline std::complex<double> contour_kernel(const GrothendieckModel& m, const KernelQuery& q,
                                           int nodes = 2048) {
  using cplx = std::complex<double>;
  const int n = m.n();
  if (q.t < 1 || q.t > n || q.s < 1 || q.s > n)
    throw IndexOutOfRange("kernel level out of range");
  double beta_max = 0, x_inv_min = std::numeric_limits<double>::infinity(), y_max = 0;
  for (const auto& b : m.betas()) beta_max = std::max(beta_max, std::fabs(to_double(b)));
  for (const auto& x : m.xs())
    if (x != 0) x_inv_min = std::min(x_inv_min, 1.0 / to_double(x));
  for (const auto& y : m.ys()) y_max = std::max(y_max, to_double(y));
  constexpr double eps = 1e-2;

  double rz = 0, rw = 0;
  if (q.t <= q.s) {
    // need y_max < R_w < R_z, beta_max < R_z < x_inv_min
    const double lo = std::max(beta_max, y_max * (1 + eps));
    if (lo >= x_inv_min)
      throw ContourInfeasible("no contour with |beta_r|, y_i < |z| < x_i^{-1}");
    rz = std::sqrt(lo * x_inv_min);
    rw = std::sqrt(std::max(y_max, 1e-12) * rz);
    if (rw >= rz) rw = (std::max(y_max, 1e-12) + rz) / 2;
  } else {
    // need beta_max < R_z < x_inv_min and R_w > max(R_z, y_max); the wide
    // annulus keeps the trapezoid aliasing of the 1/(z-w) factor negligible
    if (beta_max >= x_inv_min)
      throw ContourInfeasible("no contour with |beta_r| < |z| < x_i^{-1}");
    rz = std::sqrt(std::max(beta_max, 1e-12) * x_inv_min);
    rw = 2.0 * std::max(rz, y_max);
  }

  std::vector<double> xs(n), ys(n), betas(n - 1);
  for (int i = 0; i < n; ++i) xs[i] = to_double(m.xs()[std::size_t(i)]);
  for (int i = 0; i < n; ++i) ys[i] = to_double(m.ys()[std::size_t(i)]);
  for (int r = 0; r + 1 < n; ++r) betas[r] = to_double(m.betas()[std::size_t(r)]);
  auto F = [&](cplx z, int level) {
    cplx v(1.0, 0.0);
    for (int i = 0; i < n; ++i) v *= (1.0 - ys[i] / z) / (1.0 - z * xs[i]);
    for (int r = level; r <= n - 1; ++r) v /= 1.0 - betas[r - 1] / z;
    return v;
  };

  auto ipow = [](cplx z, long e) {
    cplx acc(1.0, 0.0);
    for (long i = 0; i < std::labs(e); ++i) acc *= z;
    return e < 0 ? cplx(1.0, 0.0) / acc : acc;
  };

  const double two_pi = 2 * std::numbers::pi;
  std::vector<cplx> zs(nodes), gz(nodes), ws(nodes), gw(nodes);
  for (int p = 0; p < nodes; ++p) {
    const double th = two_pi * p / nodes;
    const cplx z = rz * cplx(std::cos(th), std::sin(th));
    zs[p] = z;
    gz[p] = ipow(z, n - q.a - 1) * F(z, q.t) * z;  // extra z from dz = iz dth
  }
  for (int p = 0; p < nodes; ++p) {
    // half-step stagger keeps the w nodes away from the z nodes' angles
    const double th = two_pi * (p + 0.5) / nodes;
    const cplx w = rw * cplx(std::cos(th), std::sin(th));
    ws[p] = w;
    gw[p] = ipow(w, q.b - n) / F(w, q.s) * w;
  }
  cplx acc(0.0, 0.0);
  for (int p = 0; p < nodes; ++p) {
    cplx inner(0.0, 0.0);
    for (int r = 0; r < nodes; ++r) inner += gw[r] / (zs[p] - ws[r]);
    acc += gz[p] * inner;
  }
  // dz dw = (i z dth)(i w dph); the i^2 cancels (2 pi i)^{-2} up to (2 pi)^{-2}
  return acc / double(nodes) / double(nodes);
}

// ---------------------------------------------------------------------------
// Marginals and correlation functions by coefficient extraction
// ---------------------------------------------------------------------------

struct CorrelationSpec {
  std::vector<int> levels;   // i_1 < ... < i_k, subset of 1..N
  std::vector<long> targets; // a_{i_1} > ... > a_{i_k} >= 0
};

namespace detail {

// coefficient of z^deg from values of a polynomial at nodes 0..deg_max
inline std::vector<Rational> lagrange_coefficient_weights(int deg_max, int deg) {
  // weight_i = [z^deg] prod_{j != i} (z - t_j)/(t_i - t_j), nodes t = 0..deg_max
  std::vector<Rational> weights(std::size_t(deg_max) + 1);
  for (int i = 0; i <= deg_max; ++i) {
    std::vector<Rational> poly = {Rational(1)};  // ascending coefficients of prod (z - t_j)
    Rational denom(1);
    for (int j = 0; j <= deg_max; ++j) {
      if (j == i) continue;
      poly.push_back(Rational(0));
      for (int k = int(poly.size()) - 1; k >= 1; --k)
        poly[std::size_t(k)] = poly[std::size_t(k) - 1] - Rational(j) * poly[std::size_t(k)];
      poly[0] *= Rational(-j);
      denom *= Rational(i - j);
    }
    weights[std::size_t(i)] = poly[std::size_t(deg)] / denom;
  }
  return weights;
}

}  // namespace detail

// M(X_I = a_I) via the finite Fredholm block determinant: the coefficient of
// prod z_p^{N-i_p} w_p in det(1 - sum_p (1-z_p) K chi_{B_p} - sum_p (1-w_p) K chi_{C_p})
// over the window F = union {0..a_p} x {i_p}. Exact through tensor-grid
// evaluation and Lagrange extraction of the single needed coefficient.
inline Rational marginal_probability(const EmKernel& kernel, const CorrelationSpec& spec) {
  const int n = kernel.ensemble().n;
  const int k = int(spec.levels.size());
  if (int(spec.targets.size()) != k) throw WrongSize("levels/targets size mismatch");
  if (k == 0) return Rational(1);
  for (int p = 0; p + 1 < k; ++p) {
    if (spec.levels[p] >= spec.levels[p + 1]) throw NotDecreasing("levels must increase");
    if (spec.targets[p] <= spec.targets[p + 1]) throw NotDecreasing("targets must strictly decrease");
  }
  for (int p = 0; p < k; ++p)
    if (spec.levels[p] < 1 || spec.levels[p] > n || spec.targets[p] < 0)
      throw IndexOutOfRange("marginal spec out of range");

  struct Pt {
    long u;
    int level, block;
  };
  std::vector<Pt> pts;
  for (int p = 0; p < k; ++p)
    for (long u = 0; u <= spec.targets[p]; ++u) pts.push_back({u, spec.levels[p], p});
  const int dim = int(pts.size());

  RatMatrix kmat(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      kmat.at(r, c) = kernel({pts[std::size_t(r)].u, pts[std::size_t(r)].level,
                              pts[std::size_t(c)].u, pts[std::size_t(c)].level});

  // per-variable evaluation nodes and the Lagrange weights that pick out
  // [z_p^{N - i_p}] (degree <= a_p) and [w_p^1] (degree <= 1)
  std::vector<int> zdeg(k), zpick(k);
  std::vector<std::vector<Rational>> zweights(k);
  for (int p = 0; p < k; ++p) {
    zdeg[p] = int(spec.targets[p]);
    zpick[p] = n - spec.levels[p];
    if (zpick[p] > zdeg[p]) return Rational(0);  // cannot fit N-i particles left of a
    zweights[std::size_t(p)] = detail::lagrange_coefficient_weights(zdeg[p], zpick[p]);
  }
  const std::vector<Rational> wweights = detail::lagrange_coefficient_weights(1, 1);

  // iterate over the tensor grid of nodes; contract with the weights
  std::vector<int> znode(k, 0), wnode(k, 0);
  Rational total(0);
  while (true) {
    Rational coeff(1);
    for (int p = 0; p < k; ++p)
      coeff *= zweights[std::size_t(p)][std::size_t(znode[p])] * wweights[std::size_t(wnode[p])];
    if (coeff != 0) {
      RatMatrix mat(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
          const auto& pc = pts[std::size_t(c)];
          const Rational var = pc.u < spec.targets[pc.block] ? Rational(znode[pc.block])
                                                             : Rational(wnode[pc.block]);
          mat.at(r, c) = (r == c ? Rational(1) : Rational(0)) -
                         (Rational(1) - var) * kmat.at(r, c);
        }
      total += coeff * mat.det();
    }
    int p = 0;
    for (; p < k; ++p) {
      if (wnode[p] == 0) {
        wnode[p] = 1;
        break;
      }
      wnode[p] = 0;
      if (znode[p] < zdeg[p]) {
        ++znode[p];
        break;
      }
      znode[p] = 0;
    }
    if (p == k) break;
  }
  return total;
}

inline Rational marginal_probability(const TiltedEnsemble& e, const CorrelationSpec& spec) {
  return marginal_probability(EmKernel(e), spec);
}

// rho_I = M(X contains a_1, ..., a_k) = sum over level subsets I of the marginals
inline Rational correlation_function(const EmKernel& kernel, std::vector<long> points) {
  const int n = kernel.ensemble().n;
  const int k = int(points.size());
  if (k == 0) return Rational(1);
  std::sort(points.begin(), points.end(), std::greater<long>());
  for (int p = 0; p + 1 < k; ++p)
    if (points[p] == points[p + 1]) throw IndexOutOfRange("correlation points must be distinct");
  if (k > n) return Rational(0);
  Rational total(0);
  std::vector<int> levels(k);
  std::function<void(int, int)> choose = [&](int pos, int next) {
    if (pos == k) {
      total += marginal_probability(kernel, {levels, points});
      return;
    }
    for (int lv = next; lv <= n - (k - pos - 1); ++lv) {
      levels[std::size_t(pos)] = lv;
      choose(pos + 1, lv + 1);
    }
  };
  choose(0, 1);
  return total;
}

inline Rational correlation_function(const TiltedEnsemble& e, std::vector<long> points) {
  return correlation_function(EmKernel(e), std::move(points));
}

// ---------------------------------------------------------------------------
// N = 2 homogeneous closed forms
// ---------------------------------------------------------------------------

namespace detail {
inline void require_n2_homogeneous(const GrothendieckModel& m) {
  if (m.n() != 2 || !m.homogeneous_params())
    throw InvalidRegime("closed forms require N = 2 homogeneous parameters");
}
}  // namespace detail

// rho_{i,j} = M((i-1, j)) for i > j
inline Rational two_point_closed_form(const GrothendieckModel& m, long i, long j) {
  detail::require_n2_homogeneous(m);
  if (i <= j || j < 0) throw IndexOutOfRange("two-point closed form needs i > j >= 0");
  const Rational x = m.xs()[0], y = m.ys()[0], b = m.betas()[0];
  return rat_pow(Rational(1) - x * y, 4) / rat_pow(Rational(1) - x * b, 2) *
         rat_pow(x, i + j - 1) * rat_pow(y, i + j - 2) *
         (b * x * Rational(i - j - 1) - Rational(i) + Rational(j)) *
         (Rational(j - i) * (y - b) - b);
}

inline Rational one_point_closed_form(const GrothendieckModel& m, long i) {
  detail::require_n2_homogeneous(m);
  const Rational x = m.xs()[0], y = m.ys()[0], b = m.betas()[0];
  const Rational xy2 = rat_pow(x * y, 2);
  const Rational bulk = Rational(1) - xy2;
  const Rational q = rat_pow(Rational(1) - x * y, 4) / rat_pow(Rational(1) - b * x, 2);
  switch (i) {
    case 0:
      return bulk;
    case 1:
      return xy2 * bulk + q;
    case 2:
      return rat_pow(x * y, 4) * bulk +
             x * q * (b * (b * x - 2) + x * y * y + y * (Rational(4) - 2 * b * x));
    case 3:
      return rat_pow(x * y, 6) * bulk +
             x * x * y * q *
                 (x * x * rat_pow(y, 3) + y * (b * b * x * x - 8 * b * x + 9) +
                  2 * b * (2 * b * x - 3) - 2 * x * y * y * (b * x - 2));
    default:
      throw UnsupportedIndex("one-point closed forms cover positions 0..3");
  }
}

}  // namespace groth
