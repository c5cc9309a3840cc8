#pragma once

#include <vector>

#include "groth/errors.hpp"
#include "groth/rational.hpp"

namespace groth {

// Small dense matrix over exact rationals.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  Rational det() const {
    if (rows_ != cols_) throw WrongSize("det of non-square matrix");
    RatMatrix m = *this;
    const int n = rows_;
    Rational d(1);
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (m.at(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Rational(0);
      if (pivot != col) {
        for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
        d = -d;
      }
      d *= m.at(col, col);
      const Rational inv = Rational(1) / m.at(col, col);
      for (int r = col + 1; r < n; ++r) {
        if (m.at(r, col) == 0) continue;
        const Rational f = m.at(r, col) * inv;
        for (int c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
      }
    }
    return d;
  }

  // Gauss-Jordan; throws SingularGram on rank deficiency.
  RatMatrix inverse() const {
    if (rows_ != cols_) throw WrongSize("inverse of non-square matrix");
    const int n = rows_;
    RatMatrix m = *this;
    RatMatrix inv(n, n);
    for (int i = 0; i < n; ++i) inv.at(i, i) = 1;
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (m.at(r, col) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw SingularGram("singular matrix");
      if (pivot != col)
        for (int c = 0; c < n; ++c) {
          std::swap(m.at(pivot, c), m.at(col, c));
          std::swap(inv.at(pivot, c), inv.at(col, c));
        }
      const Rational pinv = Rational(1) / m.at(col, col);
      for (int c = 0; c < n; ++c) {
        m.at(col, c) *= pinv;
        inv.at(col, c) *= pinv;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || m.at(r, col) == 0) continue;
        const Rational f = m.at(r, col);
        for (int c = 0; c < n; ++c) {
          m.at(r, c) -= f * m.at(col, c);
          inv.at(r, c) -= f * inv.at(col, c);
        }
      }
    }
    return inv;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

// Dense univariate polynomial with rational coefficients, coeffs[i] * x^i.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(const Rational& v) { return Poly({v}); }
  static Poly monomial(long degree, const Rational& coeff = Rational(1)) {
    std::vector<Rational> c(std::size_t(degree) + 1);
    c.back() = coeff;
    return Poly(std::move(c));
  }
  // falling factorial k(k-1)...(k-j+1)
  static Poly falling_factorial(int j) {
    Poly p = constant(Rational(1));
    for (int i = 0; i < j; ++i) p = p * Poly({Rational(-i), Rational(1)});
    return p;
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (c_.empty() || o.c_.empty()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }
  Poly operator*(const Rational& s) const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }

  // p(x + shift)
  Poly shifted(long shift) const {
    Poly result;
    Poly xs({Rational(shift), Rational(1)});
    Poly pw = constant(Rational(1));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      result = result + pw * c_[i];
      pw = pw * xs;
    }
    return result;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(long(i));
    return Poly(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// sum_{k>=0} k^m t^k for |t| < 1, via Stirling numbers of the second kind:
// sum_k falling(k, j) t^k = j! t^j / (1-t)^{j+1}.
inline Rational geometric_power_sum(int m, const Rational& t) {
  if (rat_abs(t) >= 1) throw DivergentSum("geometric series requires |t| < 1");
  static thread_local std::vector<std::vector<Rational>> stirling = {{Rational(1)}};
  while (int(stirling.size()) <= m) {
    const auto& prev = stirling.back();
    const int mm = int(stirling.size());
    std::vector<Rational> row(std::size_t(mm) + 1);
    for (int j = 0; j <= mm; ++j) {
      if (j <= int(prev.size()) - 1) row[j] += prev[j] * Rational(j);
      if (j >= 1 && j - 1 <= int(prev.size()) - 1) row[j] += prev[j - 1];
    }
    stirling.push_back(std::move(row));
  }
  Rational acc(0);
  Rational fact(1), tpow(1);
  const Rational om = Rational(1) - t;
  Rational om_pow = om;  // (1-t)^{j+1}
  for (int j = 0; j <= m; ++j) {
    if (stirling[m][j] != 0) acc += stirling[m][j] * fact * tpow / om_pow;
    fact *= Rational(j + 1);
    tpow *= t;
    om_pow *= om;
  }
  return acc;
}

// sum_{k>=0} p(k) t^k, |t| < 1
inline Rational poly_geometric_sum(const Poly& p, const Rational& t) {
  Rational acc(0);
  const auto& c = p.coeffs();
  for (std::size_t m = 0; m < c.size(); ++m)
    if (c[m] != 0) acc += c[m] * geometric_power_sum(int(m), t);
  return acc;
}

}  // namespace groth
