#pragma once

#include <map>
#include <vector>

#include "groth/errors.hpp"
#include "groth/linalg.hpp"
#include "groth/rational.hpp"

namespace groth {

// Function on Z>=0 of the form sum_t p_t(k) * base_t^k plus a finitely
// supported correction. Closed under the difference operators
//   D f(k)        = f(k) - beta f(k+1)
//   D^dagger f(k) = f(k) - beta f(k-1) 1_{k>=1}
// which is exactly what the tilted determinants and Gram sums need.
class FnDescriptor {
 public:
  struct Term {
    Rational base;
    Poly p;
  };

  FnDescriptor() = default;

  static FnDescriptor geometric(const Rational& base) {
    return poly_geometric(base, Poly::constant(Rational(1)));
  }

  static FnDescriptor poly_geometric(const Rational& base, Poly p) {
    FnDescriptor f;
    if (base == 0) {
      // p(k) 0^k is supported at k = 0 only
      if (p.eval(0) != 0) f.finite_[0] = p.eval(0);
      return f;
    }
    if (!p.zero()) f.terms_.push_back({base, std::move(p)});
    return f;
  }

  static FnDescriptor finite_support(std::map<long, Rational> values) {
    FnDescriptor f;
    for (auto& [k, v] : values) {
      if (k < 0) throw IndexOutOfRange("finite support on Z>=0 only");
      if (v != 0) f.finite_[k] = v;
    }
    return f;
  }

  const std::vector<Term>& terms() const { return terms_; }
  const std::map<long, Rational>& finite_part() const { return finite_; }

  Rational operator()(long k) const {
    Rational v(0);
    for (const auto& t : terms_) v += t.p.eval(Rational(k)) * rat_pow(t.base, k);
    auto it = finite_.find(k);
    if (it != finite_.end()) v += it->second;
    return v;
  }

  // f(k) - beta f(k+1)
  FnDescriptor apply_D(const Rational& beta) const {
    FnDescriptor g;
    for (const auto& t : terms_) {
      Poly q = t.p - t.p.shifted(1) * (beta * t.base);
      if (!q.zero()) g.terms_.push_back({t.base, std::move(q)});
    }
    for (const auto& [k, v] : finite_) {
      g.add_finite(k, v);
      if (k >= 1) g.add_finite(k - 1, -beta * v);
    }
    return g;
  }

  // f(k) - beta f(k-1) 1_{k>=1}
  FnDescriptor apply_D_dagger(const Rational& beta) const {
    FnDescriptor g;
    for (const auto& t : terms_) {
      Poly q = t.p - t.p.shifted(-1) * (beta / t.base);
      if (!q.zero()) g.terms_.push_back({t.base, std::move(q)});
      // representation gives q(0) at k=0 but the indicator demands p(0)
      g.add_finite(0, (beta / t.base) * t.p.eval(Rational(-1)));
    }
    for (const auto& [k, v] : finite_) {
      g.add_finite(k, v);
      g.add_finite(k + 1, -beta * v);
    }
    return g;
  }

 private:
  void add_finite(long k, const Rational& v) {
    if (v == 0) return;
    auto [it, inserted] = finite_.emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) finite_.erase(it);
    }
  }

  std::vector<Term> terms_;
  std::map<long, Rational> finite_;

  friend Rational inner_product(const FnDescriptor&, const FnDescriptor&);
};

// sum_{k>=0} f(k) g(k), exact; throws DivergentSum unless every cross term
// has |base_f * base_g| < 1.
inline Rational inner_product(const FnDescriptor& f, const FnDescriptor& g) {
  Rational acc(0);
  for (const auto& a : f.terms_)
    for (const auto& b : g.terms_) acc += poly_geometric_sum(a.p * b.p, a.base * b.base);
  for (const auto& [k, v] : f.finite_) {
    Rational gk(0);
    for (const auto& b : g.terms_) gk += b.p.eval(Rational(k)) * rat_pow(b.base, k);
    acc += v * gk;
  }
  for (const auto& [k, v] : g.finite_) {
    Rational fk(0);
    for (const auto& a : f.terms_) fk += a.p.eval(Rational(k)) * rat_pow(a.base, k);
    acc += v * fk;
  }
  for (const auto& [k, v] : f.finite_) {
    auto it = g.finite_.find(k);
    if (it != g.finite_.end()) acc += v * it->second;
  }
  return acc;
}

// partial sum over a window [a, b]
inline Rational window_sum(const FnDescriptor& f, const FnDescriptor& g, long a, long b) {
  Rational acc(0);
  for (long k = a; k <= b; ++k) acc += f(k) * g(k);
  return acc;
}

}  // namespace groth
