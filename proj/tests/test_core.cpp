#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "groth/partition.hpp"
#include "groth/rational.hpp"

using namespace groth;

TEST_CASE("partition_to_particles staircase shift") {
  CHECK(partition_to_particles(Partition{}, 3).points() == std::vector<long>{2, 1, 0});
  // Fig. 1 partition
  CHECK(partition_to_particles(Partition({6, 6, 5, 3, 1, 1}), 6).points() ==
        std::vector<long>{11, 10, 8, 5, 2, 1});
  CHECK(partition_to_particles(Partition({2, 0}), 2).points() == std::vector<long>{3, 0});
  CHECK_THROWS_AS(partition_to_particles(Partition({1, 1, 1}), 2), TooManyParts);
}

TEST_CASE("particles_to_partition inverts") {
  CHECK(particles_to_partition(ParticleConfig({2, 1, 0})) == Partition{});
  CHECK(particles_to_partition(ParticleConfig({11, 10, 8, 5, 2, 1})) ==
        Partition({6, 6, 5, 3, 1, 1}));
  CHECK(particles_to_partition(ParticleConfig({3, 0})) == Partition({2, 0}));
  CHECK_THROWS_AS(ParticleConfig({1, 1}), NotDecreasing);
}

TEST_CASE("round trip, exhaustive N<=4, max_part<=5") {
  for (int n = 1; n <= 4; ++n) {
    enumerate_partitions(n, 5, [&](const Partition& p) {
      CHECK(particles_to_partition(partition_to_particles(p, n)) == p);
    });
  }
}

TEST_CASE("enumerate_partitions counts C(N+max_part, N)") {
  auto count = [](int n, long mp) {
    long c = 0;
    enumerate_partitions(n, mp, [&](const Partition&) { ++c; });
    return c;
  };
  CHECK(count(1, 2) == 3);
  CHECK(count(2, 2) == 6);
  CHECK(count(3, 3) == 20);
  // uniqueness for a mid-size case
  std::set<Partition> seen;
  enumerate_partitions(3, 4, [&](const Partition& p) { CHECK(seen.insert(p).second); });
  CHECK(long(seen.size()) == 35);
}

TEST_CASE("profile of empty partition is |u|") {
  Profile p = profile_of(Partition{}, 4);
  CHECK(p.norm() == 0);
  for (const auto& bp : p.breakpoints()) CHECK(bp.v == std::labs(bp.u));
  CHECK(p.value(0.0) == doctest::Approx(0.0));
  CHECK(p.value(-2.5) == doctest::Approx(2.5));
}

TEST_CASE("profile matches Fig. 1 conventions") {
  const Partition lam({6, 6, 5, 3, 1, 1});
  const int n = 6;
  Profile p = profile_of(lam, n);
  CHECK(p.norm() == lam.size());
  // corner structure: maxima at the removable corners lambda_i - i, minima at
  // the addable corners lambda_i - i + 1 (rows i = 1..N+1, lambda_0 = infinity)
  std::set<long> expected_max, expected_min;
  for (int i = 1; i <= n; ++i)
    if (lam.part(i - 1) > lam.part(i)) expected_max.insert(lam.part(i - 1) - i);
  for (int i = 1; i <= n + 1; ++i)
    if (i == 1 || lam.part(i - 2) > lam.part(i - 1))
      expected_min.insert(lam.part(i - 1) - i + 1);
  const auto& bps = p.breakpoints();
  std::set<long> minima, maxima;
  for (std::size_t i = 1; i + 1 < bps.size(); ++i) {
    long sl = bps[i].v - bps[i - 1].v;
    long sr = bps[i + 1].v - bps[i].v;
    // consecutive corners may be further than 1 apart; normalize to unit slopes
    sl = sl / std::labs(bps[i].u - bps[i - 1].u);
    sr = sr / std::labs(bps[i + 1].u - bps[i].u);
    if (sl < sr) minima.insert(bps[i].u);
    if (sl > sr) maxima.insert(bps[i].u);
  }
  CHECK(maxima == expected_max);
  CHECK(minima == expected_min);
  // upper bound W(u) <= u + 2N for u >= -N
  for (const auto& bp : bps)
    if (bp.u >= -n) CHECK(bp.v <= bp.u + 2 * n);
}

TEST_CASE("profile norm equals box count on random partitions") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> nd(1, 7);
    const int n = nd(rng);
    std::vector<long> parts;
    long cur = std::uniform_int_distribution<long>(0, 9)(rng);
    for (int i = 0; i < n && cur > 0; ++i) {
      parts.push_back(cur);
      cur = std::uniform_int_distribution<long>(0, cur)(rng);
    }
    Partition lam(parts);
    CHECK(profile_of(lam, n).norm() == lam.size());
  }
}

TEST_CASE("profile is 1-Lipschitz with slopes +-1") {
  Profile p = profile_of(Partition({4, 2, 2, 1}), 5);
  const auto& bps = p.breakpoints();
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    long du = bps[i + 1].u - bps[i].u;
    long dv = bps[i + 1].v - bps[i].v;
    CHECK(std::labs(dv) == std::labs(du));  // unit slopes between corners
  }
  for (const auto& bp : bps) CHECK(bp.v >= std::labs(bp.u));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-25") == Rational(-25));
  CHECK(parse_rational(" 7 / 2 ") == Rational(7, 2));
  CHECK_THROWS_AS(parse_rational("1//2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(to_double(Rational(1, 4)) == doctest::Approx(0.25));
}
