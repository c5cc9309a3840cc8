#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>
#include <vector>

#include "groth/errors.hpp"

namespace groth {

// Weakly decreasing nonnegative parts, trailing zeros normalized away.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<long> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
      if (parts_[i] < parts_[i + 1])
        throw NotDecreasing("partition parts must weakly decrease");
    if (!parts_.empty() && parts_.back() < 0)
      throw NotDecreasing("partition parts must be nonnegative");
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  const std::vector<long>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  long part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
  long size() const {  // number of boxes |lambda|
    long s = 0;
    for (long p : parts_) s += p;
    return s;
  }
  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

 private:
  std::vector<long> parts_;
};

// Strictly decreasing nonnegative particle positions l_j = lambda_j + N - j.
class ParticleConfig {
 public:
  ParticleConfig() = default;

  explicit ParticleConfig(std::vector<long> points) : points_(std::move(points)) {
    for (std::size_t j = 0; j + 1 < points_.size(); ++j)
      if (points_[j] <= points_[j + 1])
        throw NotDecreasing("particle positions must strictly decrease");
    if (!points_.empty() && points_.back() < 0)
      throw NotDecreasing("particle positions must be nonnegative");
  }

  const std::vector<long>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  long operator[](std::size_t j) const { return points_[j]; }

 private:
  std::vector<long> points_;
};

inline ParticleConfig partition_to_particles(const Partition& lambda, int n) {
  if (static_cast<int>(lambda.length()) > n)
    throw TooManyParts("partition has more than N nonzero parts");
  std::vector<long> pts(n);
  for (int j = 0; j < n; ++j) pts[j] = lambda.part(j) + n - (j + 1);
  return ParticleConfig(std::move(pts));
}

inline Partition particles_to_partition(const ParticleConfig& config) {
  const int n = static_cast<int>(config.size());
  std::vector<long> parts(n);
  for (int j = 0; j < n; ++j) {
    parts[j] = config[j] - (n - (j + 1));
    if (parts[j] < 0) throw NotDecreasing("particle config is not a shifted partition");
  }
  return Partition(std::move(parts));
}

// Yields every partition with <= n parts, each part <= max_part, exactly once.
// Count is C(n + max_part, n).
inline void enumerate_partitions(int n, long max_part,
                                 const std::function<void(const Partition&)>& emit) {
  std::vector<long> parts;
  std::function<void(int, long)> gen = [&](int slots, long cap) {
    emit(Partition(std::vector<long>(parts)));
    if (slots == 0) return;
    for (long p = cap; p >= 1; --p) {
      parts.push_back(p);
      gen(slots - 1, p);
      parts.pop_back();
    }
  };
  gen(n, max_part);
}

inline std::vector<Partition> all_partitions(int n, long max_part) {
  std::vector<Partition> out;
  enumerate_partitions(n, max_part, [&](const Partition& p) { out.push_back(p); });
  return out;
}

// Piecewise-linear rotated profile W_N(u): slopes +-1, W_N(u) = |u| far away,
// slope -1 on (k, k+1) exactly when k is an occupied Maya position lambda_i - i.
class Profile {
 public:
  struct Point {
    long u, v;
  };

  Profile(std::vector<Point> breakpoints, long norm)
      : breakpoints_(std::move(breakpoints)), norm_(norm) {}

  // corner points; first and last lie on v = |u|
  const std::vector<Point>& breakpoints() const { return breakpoints_; }

  // half the area between the profile and |u|, equals |lambda|
  long norm() const { return norm_; }

  // piecewise-linear evaluation, |u| outside the corner range
  double value(double u) const {
    if (breakpoints_.empty() || u <= breakpoints_.front().u || u >= breakpoints_.back().u)
      return std::fabs(u);
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
      const auto& a = breakpoints_[i];
      const auto& b = breakpoints_[i + 1];
      if (u <= double(b.u)) {
        double t = (u - double(a.u)) / double(b.u - a.u);
        return double(a.v) + t * double(b.v - a.v);
      }
    }
    return std::fabs(u);
  }

 private:
  std::vector<Point> breakpoints_;
  long norm_;
};

inline Profile profile_of(const Partition& lambda, int n) {
  if (static_cast<int>(lambda.length()) > n)
    throw TooManyParts("partition has more than N nonzero parts");
  const long lo = -(n + 1);
  const long hi = lambda.part(0) + 1;
  std::set<long> occupied;  // Maya positions lambda_i - i for i = 1..n
  for (int i = 1; i <= n; ++i) occupied.insert(lambda.part(i - 1) - i);
  // below -n every position is occupied, so W = |u| left of the window
  std::vector<long> w(static_cast<std::size_t>(hi - lo) + 1);
  w.back() = hi;  // W(u) = u right of all particles
  for (long k = hi - 1; k >= lo; --k) {
    const bool occ = (k < -n) || occupied.count(k) > 0;
    w[static_cast<std::size_t>(k - lo)] =
        w[static_cast<std::size_t>(k + 1 - lo)] - (occ ? -1 : 1);
  }
  long twice_area = 0;  // 2 * integral of (W - |u|)
  for (long k = lo; k < hi; ++k) {
    twice_area += (w[static_cast<std::size_t>(k - lo)] - std::labs(k)) +
                  (w[static_cast<std::size_t>(k + 1 - lo)] - std::labs(k + 1));
  }
  std::vector<Profile::Point> corners;
  for (long k = lo; k <= hi; ++k) {
    const long v = w[static_cast<std::size_t>(k - lo)];
    if (k == lo || k == hi) {
      corners.push_back({k, v});
      continue;
    }
    const long slope_l = v - w[static_cast<std::size_t>(k - 1 - lo)];
    const long slope_r = w[static_cast<std::size_t>(k + 1 - lo)] - v;
    if (slope_l != slope_r) corners.push_back({k, v});
  }
  return Profile(std::move(corners), twice_area / 4);
}

}  // namespace groth
