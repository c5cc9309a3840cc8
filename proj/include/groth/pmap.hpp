#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/schur2d.hpp"

namespace groth {

// ---------------------------------------------------------------------------
// Principal minors and cluster functions
// ---------------------------------------------------------------------------

// All 2^n principal minors A_I of an n x n matrix, indexed by subset bitmask.
struct MinorTable {
  int n = 0;
  std::vector<Rational> values;  // values[mask] = A_I, values[0] = 1

  const Rational& at(unsigned mask) const { return values[mask]; }
};

inline MinorTable principal_minors(const RatMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw WrongSize("principal minors need a square matrix");
  if (n > 12) throw SizeLimit("principal minors limited to n <= 12");
  MinorTable table;
  table.n = n;
  table.values.assign(1u << n, Rational(0));
  table.values[0] = 1;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    RatMatrix sub(int(idx.size()), int(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        sub.at(int(r), int(c)) = a.at(idx[r], idx[c]);
    table.values[mask] = sub.det();
  }
  return table;
}

// Cycle-sums T_I for |I| >= 2 expressed through the principal minors:
// T_I = sum over set partitions I = I_1 u ... u I_m of (-1)^{k+m} (m-1)! prod A_{I_p}.
struct ClusterTable {
  int n = 0;
  std::vector<Rational> values;  // indexed by mask; zero for |I| < 2

  const Rational& at(unsigned mask) const { return values[mask]; }
};

inline ClusterTable cluster_from_minors(const MinorTable& minors) {
  const int n = minors.n;
  ClusterTable table;
  table.n = n;
  table.values.assign(1u << n, Rational(0));
  std::vector<Rational> factorial = {Rational(1)};
  for (int i = 1; i <= n; ++i) factorial.push_back(factorial.back() * i);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int k = std::popcount(mask);
    if (k < 2) continue;
    Rational total(0);
    // recurse over set partitions: peel the block containing the lowest bit
    std::function<void(unsigned, int, Rational)> rec = [&](unsigned rest, int blocks,
                                                           Rational prod) {
      if (rest == 0) {
        total += (((k + blocks) % 2 == 0) ? Rational(1) : Rational(-1)) *
                 factorial[std::size_t(blocks) - 1] * prod;
        return;
      }
      const unsigned low = rest & (~rest + 1u);
      const unsigned others = rest ^ low;
      // iterate subsets s of others; block = low | s
      unsigned s = 0;
      while (true) {
        const unsigned block = low | s;
        rec(rest ^ block, blocks + 1, prod * minors.at(block));
        if (s == others) break;
        s = (s - others) & others;
      }
    };
    rec(mask, 0, Rational(1));
    table.values[mask] = total;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Nanson's determinantal test of order 4
// ---------------------------------------------------------------------------

// N4 = (1/2) det of the explicit 4x4 matrix in the cycle-sums; vanishes
// identically when the T_I come from a genuine 4x4 matrix.
inline Rational nanson4(const ClusterTable& t) {
  if (t.n != 4) throw WrongSize("nanson4 needs a 4x4 cluster table");
  auto T = [&](std::initializer_list<int> idx) {
    unsigned mask = 0;
    for (int i : idx) mask |= 1u << (i - 1);
    return t.at(mask);
  };
  RatMatrix m(4, 4);
  m.at(0, 0) = T({1, 2, 3}) * T({1, 4});
  m.at(0, 1) = T({1, 2, 4}) * T({1, 3});
  m.at(0, 2) = T({1, 3, 4}) * T({1, 2});
  m.at(0, 3) = 2 * T({1, 2}) * T({1, 3}) * T({1, 4}) * T({2, 3, 4}) +
               T({1, 2, 3}) * T({1, 2, 4}) * T({1, 3, 4});
  m.at(1, 0) = T({1, 2, 4}) * T({2, 3});
  m.at(1, 1) = T({1, 2, 3}) * T({2, 4});
  m.at(1, 2) = T({2, 3, 4}) * T({1, 2});
  m.at(1, 3) = 2 * T({1, 2}) * T({2, 3}) * T({2, 4}) * T({1, 3, 4}) +
               T({1, 2, 3}) * T({1, 2, 4}) * T({2, 3, 4});
  m.at(2, 0) = T({1, 3, 4}) * T({2, 3});
  m.at(2, 1) = T({2, 3, 4}) * T({1, 3});
  m.at(2, 2) = T({1, 2, 3}) * T({3, 4});
  m.at(2, 3) = 2 * T({1, 3}) * T({2, 3}) * T({3, 4}) * T({1, 2, 4}) +
               T({1, 2, 3}) * T({1, 3, 4}) * T({2, 3, 4});
  m.at(3, 0) = T({2, 3, 4}) * T({1, 4});
  m.at(3, 1) = T({1, 3, 4}) * T({2, 4});
  m.at(3, 2) = T({1, 2, 4}) * T({3, 4});
  m.at(3, 3) = 2 * T({1, 4}) * T({2, 4}) * T({3, 4}) * T({1, 2, 3}) +
               T({1, 2, 4}) * T({1, 3, 4}) * T({2, 3, 4});
  return m.det() / 2;
}

// ---------------------------------------------------------------------------
// Numeric Nanson-like tests of order n >= 4
// ---------------------------------------------------------------------------

// Product over deduplicated square-root sign assignments of
//   E(s) = 2^{n-2} T_{12}...T_{1n} T_{2..n}
//        - (1/2) sum over oriented (n-1)-cycles of the cyclic products
//          prod ( T_{1,c_i,c_{i+1}} + sign * R_{c_i,c_{i+1}} ),
// with R_{ij} = sqrt(T_{1ij}^2 - 4 T_{1i} T_{1j} T_{ij}). The product kills
// the branch ambiguity; it vanishes exactly when some assignment solves the
// reconstruction, i.e. when the minors come from a genuine matrix.
struct NansonN {
  std::complex<double> mantissa;  // value = mantissa * 2^exponent
  long exponent = 0;
  double min_factor_rel = 0;  // nearest-to-vanishing factor, relative to its
                              // own cancellation-free magnitude

  double log2_abs() const { return std::log2(std::abs(mantissa)) + double(exponent); }
  // the product vanishes iff some sign assignment solves the reconstruction,
  // so the scale-normalized verdict is the best factor's relative residual
  double relative() const { return min_factor_rel; }
  double im_over_re() const {
    return std::abs(mantissa.imag()) / std::max(std::abs(mantissa.real()), 1e-300);
  }
  std::complex<double> value() const { return mantissa * std::exp2(double(exponent)); }
};

inline NansonN nanson_n(const ClusterTable& t, int order) {
  const int n = order;
  if (n < 4) throw SizeLimit("nanson_n needs order >= 4");
  if (n > 7) throw SizeLimit("nanson_n limited to order <= 7");
  if (t.n != n) throw WrongSize("cluster table size does not match order");
  using cplx = std::complex<double>;

  auto T = [&](unsigned mask) { return to_double(t.at(mask)); };
  auto mask2 = [](int i, int j) { return (1u << (i - 1)) | (1u << (j - 1)); };
  auto mask3 = [&](int i, int j) { return 1u | mask2(i, j); };

  // R values for pairs 2 <= i < j <= n, principal branch
  const int npairs = (n - 1) * (n - 2) / 2;
  std::vector<cplx> R(static_cast<std::size_t>(npairs));
  std::vector<std::pair<int, int>> pairs;
  std::array<std::array<int, 8>, 8> pair_lut{};
  for (int i = 2; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      pair_lut[std::size_t(i)][std::size_t(j)] = int(pairs.size());
      pair_lut[std::size_t(j)][std::size_t(i)] = int(pairs.size());
      pairs.emplace_back(i, j);
    }
  auto pair_index = [&](int i, int j) { return pair_lut[std::size_t(i)][std::size_t(j)]; };
  for (int p = 0; p < npairs; ++p) {
    const auto& [i, j] = pairs[std::size_t(p)];
    const double t1ij = T(mask3(i, j));
    const double disc = t1ij * t1ij - 4 * T(mask2(1, i)) * T(mask2(1, j)) * T(mask2(i, j));
    R[std::size_t(p)] = std::sqrt(cplx(disc, 0.0));
  }

  // oriented (n-1)-cycles on {2..n}: fix the starting element 2
  std::vector<std::vector<int>> cycles;
  std::vector<int> restv;
  for (int v = 3; v <= n; ++v) restv.push_back(v);
  std::sort(restv.begin(), restv.end());
  do {
    std::vector<int> cyc = {2};
    cyc.insert(cyc.end(), restv.begin(), restv.end());
    cycles.push_back(cyc);
  } while (std::next_permutation(restv.begin(), restv.end()));

  double lead = std::exp2(double(n - 2));
  {
    for (int j = 2; j <= n; ++j) lead *= T(mask2(1, j));
    unsigned full = 0;
    for (int v = 2; v <= n; ++v) full |= 1u << (v - 1);
    lead *= T(full);
  }

  // product over sign assignments with the first pair's sign fixed (a global
  // flip reproduces the same factor, so this removes exact duplicates)
  const long assignments = 1L << (npairs - 1);
  cplx mantissa(1.0, 0.0);
  long exponent = 0;
  double min_factor_rel = std::numeric_limits<double>::infinity();
  for (long s = 0; s < assignments; ++s) {
    cplx sum(0.0, 0.0);
    double sum_scale = 0;
    for (const auto& cyc : cycles) {
      cplx prod(1.0, 0.0);
      double prod_scale = 1;
      for (int pos = 0; pos < n - 1; ++pos) {
        const int a = cyc[std::size_t(pos)];
        const int b = cyc[std::size_t((pos + 1) % (n - 1))];
        const int pi = pair_index(a, b);
        double sign = (a > b) ? -1.0 : 1.0;                   // descent sign
        if (pi > 0 && ((s >> (pi - 1)) & 1)) sign = -sign;    // branch choice
        const cplx term = T(mask3(a, b)) + sign * R[std::size_t(pi)];
        prod *= term;
        prod_scale *= std::abs(T(mask3(a, b))) + std::abs(R[std::size_t(pi)]);
      }
      sum += prod;
      sum_scale += prod_scale;
    }
    const cplx factor = lead - 0.5 * sum;
    const double factor_scale = std::abs(lead) + 0.5 * sum_scale;
    min_factor_rel = std::min(min_factor_rel, std::abs(factor) / std::max(factor_scale, 1e-300));
    mantissa *= factor;
    int e = 0;
    const double mag = std::abs(mantissa);
    if (mag > 0) {
      std::frexp(mag, &e);
      mantissa *= std::exp2(double(-e));
      exponent += e;
    }
  }
  return {mantissa, exponent, min_factor_rel};
}

// ---------------------------------------------------------------------------
// Non-determinantality witness for Grothendieck measures
// ---------------------------------------------------------------------------

// Assembles rho_I for I subsets of four points (correlations of order >= 3
// vanish: only two particles exist at N = 2), treats them as prospective
// principal minors, and runs Nanson's test.
inline Rational determinantality_witness(const GrothendieckModel& m,
                                         const std::array<long, 4>& points) {
  if (m.n() != 2 || !m.homogeneous_params())
    throw InvalidRegime("witness computation requires the N = 2 homogeneous model");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (points[std::size_t(i)] == points[std::size_t(j)])
        throw IndexOutOfRange("witness points must be distinct");
  EmKernel kernel(m.ensemble());
  MinorTable minors;
  minors.n = 4;
  minors.values.assign(16, Rational(0));
  minors.values[0] = 1;
  for (unsigned mask = 1; mask < 16; ++mask) {
    if (std::popcount(mask) > 2) continue;  // rho_I = 0 for |I| >= 3
    std::vector<long> pts;
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) pts.push_back(points[std::size_t(i)]);
    minors.values[mask] = correlation_function(kernel, pts);
  }
  return nanson4(cluster_from_minors(minors));
}

// scaling used for the witness report: (beta-2)^32 / ((beta-4)(beta-1) beta^4)
inline Rational nanson_paper_scale(const Rational& beta) {
  const Rational denom = (beta - 4) * (beta - 1) * rat_pow(beta, 4);
  if (denom == 0) throw ZeroParameter("paper scaling undefined at beta in {0, 1, 4}");
  return rat_pow(beta - 2, 32) / denom;
}

}  // namespace groth
