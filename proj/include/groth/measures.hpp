#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "groth/descriptors.hpp"
#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/partition.hpp"
#include "groth/rational.hpp"

namespace groth {

// ---------------------------------------------------------------------------
// Tilted biorthogonal ensembles
// ---------------------------------------------------------------------------

struct TiltedEnsemble {
  int n = 0;
  std::vector<FnDescriptor> phi, psi;  // size n each
  std::vector<Rational> betas;         // size n-1

  const Rational& beta(int r) const {  // r in 1..n-1
    if (r < 1 || r > n - 1) throw IndexOutOfRange("beta index out of range");
    return betas[std::size_t(r) - 1];
  }
};

// single-operator evaluations, r in 1..N-1
inline Rational apply_D(const FnDescriptor& f, const TiltedEnsemble& e, int r, long k) {
  return f(k) - e.beta(r) * f(k + 1);
}

inline Rational apply_D_dagger(const FnDescriptor& f, const TiltedEnsemble& e, int r, long k) {
  if (k >= 1) return f(k) - e.beta(r) * f(k - 1);
  return f(k);
}

// D^{[a,b)} = D^{(a)} D^{(a+1)} ... D^{(b-1)}; the operators commute.
inline FnDescriptor d_chain(const FnDescriptor& f, const TiltedEnsemble& e, int a, int b) {
  FnDescriptor g = f;
  for (int r = a; r < b; ++r) g = g.apply_D(e.beta(r));
  return g;
}

inline FnDescriptor d_dagger_chain(const FnDescriptor& f, const TiltedEnsemble& e, int a, int b) {
  FnDescriptor g = f;
  for (int r = a; r < b; ++r) g = g.apply_D_dagger(e.beta(r));
  return g;
}

// W(X) = det[D^{[1,j)} Phi_i(l_j)] * det[D^{[j,N) dagger} Psi_i(l_j)].
// A configuration with the wrong point count has weight 0 by convention.
inline Rational tilted_weight(const TiltedEnsemble& e, const ParticleConfig& x) {
  if (int(x.size()) != e.n) return Rational(0);
  const int n = e.n;
  RatMatrix a(n, n), b(n, n);
  std::vector<FnDescriptor> dphi(e.phi), ddpsi(e.psi);
  for (int j = 1; j <= n; ++j) {
    // columns j use D^{[1,j)} and D^{[j,N) dagger}; build both incrementally
    for (int i = 0; i < n; ++i) a.at(i, j - 1) = dphi[i](x[j - 1]);
    if (j < n)
      for (int i = 0; i < n; ++i) dphi[i] = dphi[i].apply_D(e.beta(j));
  }
  for (int j = n; j >= 1; --j) {
    for (int i = 0; i < n; ++i) b.at(i, j - 1) = ddpsi[i](x[j - 1]);
    if (j > 1)
      for (int i = 0; i < n; ++i) ddpsi[i] = ddpsi[i].apply_D_dagger(e.beta(j - 1));
  }
  return a.det() * b.det();
}

// G_ij = sum_k Psi_j(k) D^{[1,N)} Phi_i(k), evaluated in closed form.
inline RatMatrix gram_matrix(const TiltedEnsemble& e) {
  const int n = e.n;
  RatMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    FnDescriptor dphi = d_chain(e.phi[i], e, 1, n);
    for (int j = 0; j < n; ++j) g.at(i, j) = inner_product(e.psi[j], dphi);
  }
  return g;
}

inline Rational normalization(const TiltedEnsemble& e) { return gram_matrix(e).det(); }

// ---------------------------------------------------------------------------
// Grothendieck specialization
// ---------------------------------------------------------------------------

enum class PositivityRegime { Strict, Extended, None };

struct ModelParams {
  std::vector<Rational> xs, ys;   // length N
  std::vector<Rational> betas;    // length N-1
  bool homogeneous = false;
};

class GrothendieckModel {
 public:
  GrothendieckModel(std::vector<Rational> xs, std::vector<Rational> ys,
                    std::vector<Rational> betas) {
    params_.xs = std::move(xs);
    params_.ys = std::move(ys);
    params_.betas = std::move(betas);
    const std::size_t n = params_.xs.size();
    if (n == 0 || params_.ys.size() != n || params_.betas.size() + 1 != n)
      throw WrongSize("need N x-parameters, N y-parameters, N-1 beta-parameters");
    for (const auto& x : params_.xs)
      for (const auto& y : params_.ys)
        if (rat_abs(x * y) >= 1) throw DivergentSum("|x_i y_j| < 1 is required");
    params_.homogeneous = true;
    for (const auto& v : params_.xs) params_.homogeneous &= (v == params_.xs[0]);
    for (const auto& v : params_.ys) params_.homogeneous &= (v == params_.ys[0]);
    for (const auto& v : params_.betas) params_.homogeneous &= (v == params_.betas[0]);
  }

  static GrothendieckModel homogeneous(int n, const Rational& x, const Rational& y,
                                       const Rational& beta) {
    return GrothendieckModel(std::vector<Rational>(n, x), std::vector<Rational>(n, y),
                             std::vector<Rational>(std::size_t(n) - 1, beta));
  }

  int n() const { return int(params_.xs.size()); }
  const std::vector<Rational>& xs() const { return params_.xs; }
  const std::vector<Rational>& ys() const { return params_.ys; }
  const std::vector<Rational>& betas() const { return params_.betas; }
  bool homogeneous_params() const { return params_.homogeneous; }

  PositivityRegime regime() const {
    bool xy_ok = true;
    for (const auto& x : params_.xs) xy_ok &= (x >= 0);
    for (const auto& y : params_.ys) xy_ok &= (y >= 0);
    if (!xy_ok) return PositivityRegime::None;
    bool strict = true, extended = true;
    for (const auto& b : params_.betas) {
      strict &= (b <= 0);
      for (const auto& x : params_.xs) extended &= (x == 0 || b <= Rational(1) / x);
      for (const auto& y : params_.ys) extended &= (b <= y);
    }
    if (strict) return PositivityRegime::Strict;
    if (extended) return PositivityRegime::Extended;
    return PositivityRegime::None;
  }

  // Geometric descriptor family; for repeated parameter values the duplicates
  // are replaced by k(k-1)...(k-j+1) x^k rows (the confluent basis), so the
  // Gram matrix stays invertible and normalized quantities are unchanged.
  TiltedEnsemble ensemble() const {
    TiltedEnsemble e;
    e.n = n();
    e.betas = params_.betas;
    e.phi = confluent_family(params_.xs);
    e.psi = confluent_family(params_.ys);
    return e;
  }

 private:
  static std::vector<FnDescriptor> confluent_family(const std::vector<Rational>& vals) {
    std::vector<FnDescriptor> fam;
    std::map<Rational, int> seen;
    for (const auto& v : vals) {
      const int j = seen[v]++;
      fam.push_back(FnDescriptor::poly_geometric(v, Poly::falling_factorial(j)));
    }
    return fam;
  }

  ModelParams params_;
};

// det[ rows of f_j at the (possibly repeated) points ] divided by the same
// construction applied to the monomials x^{N-j}; repeated points contribute
// derivative rows f^{(d)}/d!, which is the x2 -> x1 limit taken exactly.
inline Rational confluent_alternant(const std::vector<Poly>& cols,
                                    const std::vector<Rational>& points) {
  const int n = int(points.size());
  if (int(cols.size()) != n) throw WrongSize("confluent alternant: need N columns");
  std::map<Rational, int> mult;
  std::vector<std::pair<Rational, int>> rows;  // (value, derivative order)
  int max_order = 0;
  for (const auto& v : points) {
    rows.emplace_back(v, mult[v]++);
    max_order = std::max(max_order, rows.back().second);
  }
  auto build = [&](const std::vector<Poly>& cs) {
    RatMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
      std::vector<Poly> derivs{cs[j]};  // derivs[d] = f^{(d)} / d!
      for (int d = 1; d <= max_order; ++d)
        derivs.push_back(derivs[std::size_t(d) - 1].derivative() * (Rational(1) / Rational(d)));
      for (int i = 0; i < n; ++i)
        m.at(i, j) = derivs[std::size_t(rows[i].second)].eval(rows[i].first);
    }
    return m.det();
  };
  std::vector<Poly> vand(n);
  for (int j = 0; j < n; ++j) vand[j] = Poly::monomial(n - 1 - j);
  const Rational denom = build(vand);
  if (denom == 0) throw SingularGram("confluent Vandermonde vanished");
  return build(cols) / denom;
}

// G_lambda(x | beta): columns x^{l_j} (1-beta_1 x)...(1-beta_{j-1} x)
inline Rational grothendieck_G(const Partition& lambda, const GrothendieckModel& m) {
  const int n = m.n();
  if (int(lambda.length()) > n) throw TooManyParts("lambda has more than N parts");
  std::vector<Poly> cols(n);
  for (int j = 1; j <= n; ++j) {
    Poly f = Poly::monomial(lambda.part(j - 1) + n - j);
    for (int r = 1; r < j; ++r)
      f = f * Poly({Rational(1), -m.betas()[std::size_t(r) - 1]});
    cols[j - 1] = std::move(f);
  }
  return confluent_alternant(cols, m.xs());
}

// Gbar_lambda(y | beta): columns y^{l_j} (1-beta_j/y)...(1-beta_{N-1}/y),
// polynomial form y^{lambda_j} (y-beta_j)...(y-beta_{N-1}).
inline Rational grothendieck_Gbar(const Partition& lambda, const GrothendieckModel& m) {
  const int n = m.n();
  if (int(lambda.length()) > n) throw TooManyParts("lambda has more than N parts");
  for (const auto& y : m.ys())
    if (y == 0) throw ZeroParameter("Gbar requires nonzero y parameters");
  std::vector<Poly> cols(n);
  for (int j = 1; j <= n; ++j) {
    Poly f = Poly::monomial(lambda.part(j - 1));
    for (int r = j; r <= n - 1; ++r)
      f = f * Poly({-m.betas()[std::size_t(r) - 1], Rational(1)});
    cols[j - 1] = std::move(f);
  }
  return confluent_alternant(cols, m.ys());
}

inline Rational grothendieck_prefactor(const GrothendieckModel& m) {
  Rational pre(1);
  for (const auto& x : m.xs()) {
    for (const auto& y : m.ys()) pre *= Rational(1) - x * y;
    for (const auto& b : m.betas()) {
      const Rational f = Rational(1) - x * b;
      if (f == 0) throw DivergentSum("1 - x_i beta_r vanished");
      pre /= f;
    }
  }
  return pre;
}

// M(lambda) = prod(1-x_i y_j)/prod(1-x_i beta_r) * G_lambda * Gbar_lambda
inline Rational grothendieck_weight(const Partition& lambda, const GrothendieckModel& m) {
  return grothendieck_prefactor(m) * grothendieck_G(lambda, m) * grothendieck_Gbar(lambda, m);
}

// Z = prod_{i,r}(1-x_i beta_r) prod_{i<j}(x_i-x_j)(y_i-y_j) / prod_{i,j}(1-x_i y_j)
inline Rational normalization_closed_form(const GrothendieckModel& m) {
  Rational z(1);
  for (const auto& x : m.xs())
    for (const auto& b : m.betas()) z *= Rational(1) - x * b;
  const int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      z *= (m.xs()[i] - m.xs()[j]) * (m.ys()[i] - m.ys()[j]);
  for (const auto& x : m.xs())
    for (const auto& y : m.ys()) z /= Rational(1) - x * y;
  return z;
}

struct CauchySum {
  Rational partial;
  long max_part;
};

// Partial sums of the weights over lambda_1 <= M, doubling M until the
// increment drops below tol/4 (geometric decay under |xy| < 1).
inline CauchySum cauchy_sum(const GrothendieckModel& m, double tol = 1e-10,
                            long initial_cap = 8, long hard_cap = 4096) {
  long cap = initial_cap;
  Rational prev(0);
  Rational sum(0);
  while (true) {
    sum = 0;
    enumerate_partitions(m.n(), cap, [&](const Partition& p) {
      sum += grothendieck_weight(p, m);
    });
    const double inc = std::abs(to_double(sum - prev));
    if (cap > initial_cap && inc < tol / 4) break;
    if (cap >= hard_cap) break;
    prev = sum;
    cap *= 2;
  }
  return {sum, cap};
}

}  // namespace groth
