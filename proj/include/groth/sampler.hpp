#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "groth/errors.hpp"
#include "groth/measures.hpp"
#include "groth/rsk.hpp"

namespace groth {

// Deterministic stream: identical (seed, stream_id) reproduce identical samples.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// std::mt19937_64 is fully specified by the standard, so streams are
// reproducible across platforms; variates use explicit inverse-CDF maps.
class SampleRng {
 public:
  explicit SampleRng(const RngSpec& spec) {
    std::seed_seq seq{spec.seed & 0xffffffffu, spec.seed >> 32,
                      spec.stream_id & 0xffffffffu, spec.stream_id >> 32};
    gen_.seed(seq);
  }

  double uniform() {  // 53-bit uniform in [0, 1)
    return double(gen_() >> 11) * 0x1.0p-53;
  }

  // P(k) = (1-p) p^k via inverse CDF: k = floor(log(1-u)/log(p))
  long geometric(double p) {
    if (p <= 0) return 0;
    const double u = uniform();
    return long(std::floor(std::log1p(-u) / std::log(p)));
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

namespace detail {

inline void require_sampler_regime(const GrothendieckModel& m) {
  if (!m.homogeneous_params())
    throw InvalidRegime("sampler supports homogeneous parameters only");
  if (m.betas().size() > 0 && m.betas()[0] > 0)
    throw InvalidRegime("sampler requires beta <= 0");
  const Rational xy = m.xs()[0] * m.ys()[0];
  if (xy <= 0 || xy >= 1) throw InvalidRegime("sampler requires 0 < xy < 1");
}

}  // namespace detail

// Two-stage RSK dynamics. Stage one inserts N rows of geometric counts with
// P(xi = k) = (1-xy)(xy)^k; stage two inserts N-1 dual 0/1 words with
// P(eta = 1) = -beta x/(1 - beta x). The readout lambda_{N-s+1} = T(N+s-1)_{N-s+1}
// starts at s = 1 (before any dual insertion).
struct SchurProcessSample {
  std::vector<Partition> levels;  // mu^1, ..., mu^N
  Partition grothendieck;         // lambda_i = mu^i_i
};

inline SchurProcessSample sample_schur_process_full(const GrothendieckModel& m,
                                                    const RngSpec& rng_spec) {
  detail::require_sampler_regime(m);
  const int n = m.n();
  const double p_geo = to_double(m.xs()[0] * m.ys()[0]);
  const Rational beta = n > 1 ? m.betas()[0] : Rational(0);
  const double p_ber = to_double(-beta * m.xs()[0] / (1 - beta * m.xs()[0]));
  SampleRng rng(rng_spec);

  Tableau t;
  for (int step = 0; step < n; ++step) {
    std::vector<long> counts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) counts[std::size_t(j)] = rng.geometric(p_geo);
    rsk_insert_word(t, counts);
  }
  std::vector<Partition> mu(static_cast<std::size_t>(n));       // mu^{N-s+1} = shape of T(N+s-1)
  std::vector<long> lambda(static_cast<std::size_t>(n), 0);
  mu[std::size_t(n) - 1] = t.shape();
  lambda[std::size_t(n) - 1] = t.shape().part(std::size_t(n) - 1);
  for (int s = 2; s <= n; ++s) {
    std::vector<int> bits(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) bits[std::size_t(j)] = rng.bernoulli(p_ber) ? 1 : 0;
    dual_rsk_insert_word(t, bits);
    const Partition shape = t.shape();
    mu[std::size_t(n - s)] = shape;
    lambda[std::size_t(n - s)] = shape.part(std::size_t(n - s));
  }
  return {std::move(mu), Partition(std::move(lambda))};
}

inline Partition sample_grothendieck(const GrothendieckModel& m, const RngSpec& rng) {
  return sample_schur_process_full(m, rng).grothendieck;
}

inline std::vector<Partition> sample_schur_process(const GrothendieckModel& m,
                                                   const RngSpec& rng) {
  return sample_schur_process_full(m, rng).levels;
}

}  // namespace groth
