#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "groth/pmap.hpp"
#include "testutil.hpp"

using namespace groth;
using groth::testutil::random_rational;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, int n) {
  RatMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.at(r, c) = random_rational(rng);
  return m;
}

// independent oracle: determinant by cofactor expansion along the first row
Rational cofactor_det(const RatMatrix& m) {
  const int n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m.at(0, 0);
  Rational acc(0);
  for (int c = 0; c < n; ++c) {
    RatMatrix sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == c) continue;
        sub.at(r - 1, cc++) = m.at(r, k);
      }
    }
    const Rational term = m.at(0, c) * cofactor_det(sub);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

// independent oracle: cycle-sum by direct enumeration of the (k-1)! cycles
Rational direct_cycle_sum(const RatMatrix& m, unsigned mask) {
  std::vector<int> idx;
  for (int i = 0; i < m.rows(); ++i)
    if (mask & (1u << i)) idx.push_back(i);
  const int k = int(idx.size());
  if (k < 2) return Rational(0);
  std::vector<int> rest(idx.begin() + 1, idx.end());
  std::sort(rest.begin(), rest.end());
  Rational total(0);
  do {
    Rational prod(1);
    int prev = idx[0];
    for (int v : rest) {
      prod *= m.at(prev, v);
      prev = v;
    }
    prod *= m.at(prev, idx[0]);
    total += prod;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return total;
}

}  // namespace

TEST_CASE("principal minors basics") {
  RatMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
  MinorTable t = principal_minors(id);
  for (unsigned mask = 0; mask < 8; ++mask) CHECK(t.at(mask) == 1);

  RatMatrix diag(3, 3);
  diag.at(0, 0) = Rational(2);
  diag.at(1, 1) = Rational(-3);
  diag.at(2, 2) = Rational(1, 5);
  MinorTable td = principal_minors(diag);
  for (unsigned mask = 0; mask < 8; ++mask) {
    Rational expect(1);
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) expect *= diag.at(i, i);
    CHECK(td.at(mask) == expect);
  }

  std::mt19937_64 rng(5);
  RatMatrix m = random_matrix(rng, 4);
  MinorTable tm = principal_minors(m);
  for (unsigned mask : {0b1111u, 0b1011u, 0b0110u, 0b0001u}) {
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    RatMatrix sub(int(idx.size()), int(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        sub.at(int(r), int(c)) = m.at(idx[r], idx[c]);
    CHECK(tm.at(mask) == cofactor_det(sub));
  }

  CHECK_THROWS_AS(principal_minors(RatMatrix(13, 13)), SizeLimit);
}

TEST_CASE("cluster functions from minors") {
  // diagonal matrix: no off-diagonal cycles
  RatMatrix diag(4, 4);
  for (int i = 0; i < 4; ++i) diag.at(i, i) = Rational(i + 1);
  ClusterTable td = cluster_from_minors(principal_minors(diag));
  for (unsigned mask = 0; mask < 16; ++mask)
    if (std::popcount(mask) >= 2) CHECK(td.at(mask) == 0);

  // all-ones 3x3: two 3-cycles with product 1
  RatMatrix ones(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) ones.at(r, c) = 1;
  ClusterTable to = cluster_from_minors(principal_minors(ones));
  CHECK(to.at(0b111) == 2);
  CHECK(to.at(0b011) == 1);  // T_ij = a_ij a_ji

  // random 5x5 vs direct cycle enumeration, every subset
  std::mt19937_64 rng(7);
  RatMatrix m = random_matrix(rng, 5);
  ClusterTable t = cluster_from_minors(principal_minors(m));
  for (unsigned mask = 0; mask < 32; ++mask)
    if (std::popcount(mask) >= 2) CHECK(t.at(mask) == direct_cycle_sum(m, mask));
}

TEST_CASE("T_ij = A_i A_j - A_ij") {
  std::mt19937_64 rng(9);
  RatMatrix m = random_matrix(rng, 4);
  MinorTable minors = principal_minors(m);
  ClusterTable t = cluster_from_minors(minors);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const unsigned mi = 1u << i, mj = 1u << j;
      CHECK(t.at(mi | mj) == minors.at(mi) * minors.at(mj) - minors.at(mi | mj));
    }
}

TEST_CASE("nanson4 vanishes exactly on genuine matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    RatMatrix m = random_matrix(rng, 4);
    CHECK(nanson4(cluster_from_minors(principal_minors(m))) == 0);
  }
  ClusterTable wrong;
  wrong.n = 3;
  CHECK_THROWS_AS(nanson4(wrong), WrongSize);
}

TEST_CASE("cluster table is invariant under diagonal conjugation") {
  std::mt19937_64 rng(13);
  RatMatrix m = random_matrix(rng, 4);
  RatMatrix conj(4, 4);
  std::vector<Rational> d;
  for (int i = 0; i < 4; ++i) d.push_back(random_rational(rng, 7, 7, /*nonzero=*/true));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) conj.at(r, c) = d[std::size_t(r)] * m.at(r, c) / d[std::size_t(c)];
  ClusterTable a = cluster_from_minors(principal_minors(m));
  ClusterTable b = cluster_from_minors(principal_minors(conj));
  for (unsigned mask = 0; mask < 16; ++mask) CHECK(a.at(mask) == b.at(mask));
}

TEST_CASE("Grothendieck witness reproduces the non-determinantality value") {
  GrothendieckModel m = GrothendieckModel::homogeneous(2, Rational(1, 2), Rational(1, 2),
                                                       Rational(-1));
  const Rational raw = determinantality_witness(m, {0, 1, 2, 3});
  const Rational scaled = raw * nanson_paper_scale(Rational(-1));
  // frozen from the independent exact-arithmetic oracle; ~ 5.0215e-5 > 0
  const Rational expect(BigInt("4809609479215050016729612072259884161366750173265"),
                        BigInt("95780971304118053647396689196894323976171195136475136"));
  CHECK(scaled == expect);
  const double v = to_double(scaled);
  CHECK(v == doctest::Approx(0.00005021).epsilon(1e-4));
  CHECK(v > 0);
}

TEST_CASE("witness vanishes exactly at beta = 0 and is nonzero off it") {
  GrothendieckModel schur = GrothendieckModel::homogeneous(2, Rational(1, 2), Rational(1, 2),
                                                           Rational(0));
  CHECK(determinantality_witness(schur, {0, 1, 2, 3}) == 0);

  GrothendieckModel other = GrothendieckModel::homogeneous(2, Rational(1, 3), Rational(1, 5),
                                                           Rational(-1));
  CHECK(determinantality_witness(other, {0, 1, 2, 3}) != 0);
}

TEST_CASE("witness scales as beta^4 near beta = 0") {
  const Rational x(1, 2), y(1, 2);
  const Rational w2 = determinantality_witness(
      GrothendieckModel::homogeneous(2, x, y, Rational(-1, 100)), {0, 1, 2, 3});
  const Rational w3 = determinantality_witness(
      GrothendieckModel::homogeneous(2, x, y, Rational(-1, 1000)), {0, 1, 2, 3});
  const double ratio = to_double(w2 / w3);
  CHECK(ratio == doctest::Approx(1e4).epsilon(0.2));
}

TEST_CASE("nanson_n at order 4 matches 256 T12^2 T13^2 T14^2 nanson4") {
  // compare on a perturbed table, where both sides are nonzero
  std::mt19937_64 rng(17);
  RatMatrix m = random_matrix(rng, 4);
  MinorTable minors = principal_minors(m);
  minors.values[0b1111] += Rational(1, 7);
  ClusterTable t = cluster_from_minors(minors);
  const NansonN prod = nanson_n(t, 4);
  const Rational common = 256 * rat_pow(t.at(0b0011), 2) * rat_pow(t.at(0b0101), 2) *
                          rat_pow(t.at(0b1001), 2);
  const double expect = to_double(common * nanson4(t));
  const double got = prod.value().real();
  CHECK(got == doctest::Approx(expect).epsilon(1e-8));
  CHECK(prod.im_over_re() < 1e-8);

  // and on the Grothendieck witness correlations
  GrothendieckModel gm = GrothendieckModel::homogeneous(2, Rational(1, 2), Rational(1, 2),
                                                        Rational(-1));
  EmKernel kernel(gm.ensemble());
  MinorTable rho;
  rho.n = 4;
  rho.values.assign(16, Rational(0));
  rho.values[0] = 1;
  for (unsigned mask = 1; mask < 16; ++mask) {
    if (std::popcount(mask) > 2) continue;
    std::vector<long> pts;
    for (long i = 0; i < 4; ++i)
      if (mask & (1u << i)) pts.push_back(i);
    rho.values[mask] = correlation_function(kernel, pts);
  }
  ClusterTable tw = cluster_from_minors(rho);
  const NansonN pw = nanson_n(tw, 4);
  const Rational cw = 256 * rat_pow(tw.at(0b0011), 2) * rat_pow(tw.at(0b0101), 2) *
                      rat_pow(tw.at(0b1001), 2);
  CHECK(pw.value().real() ==
        doctest::Approx(to_double(cw * nanson4(tw))).epsilon(1e-8));
}

TEST_CASE("nanson_n order 5: vanishes on genuine matrices, detects perturbations") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    // nonzero entries keep the reconstruction nondegenerate (T_1j != 0)
    RatMatrix m(5, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) m.at(r, c) = random_rational(rng, 9, 9, /*nonzero=*/true);
    MinorTable minors = principal_minors(m);
    const NansonN clean = nanson_n(cluster_from_minors(minors), 5);
    CHECK(clean.relative() < 1e-8);

    // perturb a minor the test actually sees (A_{2345} feeds T_{2..n})
    minors.values[0b11110] += Rational(1, 100);
    const NansonN bent = nanson_n(cluster_from_minors(minors), 5);
    CHECK(bent.relative() > 1e-6);
    if (std::fabs(bent.mantissa.real()) > 1e-12) CHECK(bent.im_over_re() < 1e-8);
  }
  ClusterTable t;
  t.n = 8;
  CHECK_THROWS_AS(nanson_n(t, 8), SizeLimit);
}

TEST_CASE("paper scale guards its poles") {
  CHECK_THROWS_AS(nanson_paper_scale(Rational(0)), ZeroParameter);
  CHECK_THROWS_AS(nanson_paper_scale(Rational(1)), ZeroParameter);
  CHECK_THROWS_AS(nanson_paper_scale(Rational(4)), ZeroParameter);
  CHECK(nanson_paper_scale(Rational(-1)) ==
        rat_pow(Rational(-3), 32) / ((Rational(-5)) * (Rational(-2)) * Rational(1)));
}
