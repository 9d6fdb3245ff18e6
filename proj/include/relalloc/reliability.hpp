// reliability.hpp - Exact, brute-force and Monte Carlo evaluation of the
// probability that an allocation keeps at least `dem` instances alive.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "relalloc/model.hpp"

namespace relalloc {

enum class RelMethod { DP, BruteForce, MonteCarlo };

struct ReliabilityEstimate {
  double value = 0.0;
  RelMethod method = RelMethod::DP;
  // Monte Carlo only:
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> standard_error;  // sqrt(value * (1 - value) / trials)
};

namespace detail {

inline void kahan_add(long double& sum, long double& comp, long double x) {
  const long double y = x - comp;
  const long double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace detail

// P(|Alive| >= k) with |Alive| ~ Binomial(m, 1 - fail).
//
// Individual terms are computed in extended precision through log-gamma,
//   exp(log C(m,i) + i*log(1-fail) + (m-i)*log(fail)),
// and the numerically smaller tail is accumulated with compensated summation;
// the result is 1 minus that sum when the complementary tail was summed.
// Naive factorials overflow and the large tail loses precision when the
// target probabilities sit near 1e-6 with m in the hundreds.
inline double binom_alive_tail(int m, double fail, int k) {
  if (m < 1) throw std::invalid_argument("binom_alive_tail: m must be >= 1");
  if (!(fail >= 0.0 && fail < 1.0))
    throw std::invalid_argument("binom_alive_tail: fail must lie in [0,1)");
  if (k <= 0) return 1.0;
  if (k > m) return 0.0;
  if (fail == 0.0) return 1.0;  // all machines survive

  const long double lq = std::log1p(static_cast<long double>(-fail));
  const long double lp = std::log(static_cast<long double>(fail));
  const long double lgm = std::lgamma(static_cast<long double>(m) + 1.0L);
  auto term = [&](int i) {
    return std::exp(lgm - std::lgamma(static_cast<long double>(i) + 1.0L) -
                    std::lgamma(static_cast<long double>(m - i) + 1.0L) +
                    static_cast<long double>(i) * lq + static_cast<long double>(m - i) * lp);
  };

  long double sum = 0.0L, comp = 0.0L;
  if (static_cast<double>(k) > static_cast<double>(m) * (1.0 - fail)) {
    // upper tail is the smaller one
    for (int i = k; i <= m; ++i) detail::kahan_add(sum, comp, term(i));
    return std::min(1.0, static_cast<double>(sum));
  }
  for (int i = 0; i < k; ++i) detail::kahan_add(sum, comp, term(i));
  return std::max(0.0, static_cast<double>(1.0L - sum));
}

// Largest m' in [0, m] such that at least m' machines survive with
// probability >= 1 - rel. m' = 0 always qualifies.
inline int alive_quantile(int m, double fail, double rel) {
  const double target = 1.0 - rel;
  int lo = 0, hi = m;  // invariant: tail(lo) >= target
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (binom_alive_tail(m, fail, mid) >= target)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Exact P(sum of alive loads >= dem) by dynamic programming over the
// distribution of the alive-instance total. Each machine either contributes
// its load (weight 1 - fail) or nothing (weight fail); zero loads are
// skipped. State space is sum(loads) + 1, cost O(m * sum(loads)).
inline double reliability_dp(std::span<const std::int64_t> loads, double fail, std::int64_t dem) {
  if (!(fail >= 0.0 && fail < 1.0))
    throw std::invalid_argument("reliability_dp: fail must lie in [0,1)");
  if (dem <= 0) return 1.0;
  std::int64_t total = 0;
  for (auto a : loads) {
    if (a < 0) throw std::invalid_argument("reliability_dp: loads must be >= 0");
    total += a;
  }
  if (total < dem) return 0.0;
  if (fail == 0.0) return 1.0;

  const double q = 1.0 - fail;
  std::vector<double> dist(static_cast<std::size_t>(total) + 1, 0.0);
  dist[0] = 1.0;
  std::int64_t top = 0;
  for (auto a : loads) {
    if (a == 0) continue;
    // in place, descending so each source is read before it is overwritten
    for (std::int64_t t = top; t >= 0; --t) {
      const double w = dist[static_cast<std::size_t>(t)];
      if (w != 0.0) {
        dist[static_cast<std::size_t>(t + a)] += q * w;
        dist[static_cast<std::size_t>(t)] = fail * w;
      }
    }
    top += a;
  }

  long double sum = 0.0L, comp = 0.0L;
  for (std::int64_t t = dem; t <= total; ++t)
    detail::kahan_add(sum, comp, dist[static_cast<std::size_t>(t)]);
  return std::min(1.0, static_cast<double>(sum));
}

inline double reliability_dp(const Allocation& alloc, double fail, std::int64_t dem) {
  return reliability_dp(std::span<const std::int64_t>(alloc.loads), fail, dem);
}

// Test oracle for reliability_dp: enumerates all 2^m alive subsets.
inline double reliability_bruteforce(std::span<const std::int64_t> loads, double fail,
                                     std::int64_t dem) {
  const int m = static_cast<int>(loads.size());
  if (m > 25)
    throw std::invalid_argument(
        "reliability_bruteforce: refusing m > 25 (2^m subset enumeration guard)");
  if (!(fail >= 0.0 && fail < 1.0))
    throw std::invalid_argument("reliability_bruteforce: fail must lie in [0,1)");
  if (dem <= 0) return 1.0;

  std::vector<double> pow_alive(m + 1), pow_dead(m + 1);
  pow_alive[0] = pow_dead[0] = 1.0;
  for (int i = 1; i <= m; ++i) {
    pow_alive[i] = pow_alive[i - 1] * (1.0 - fail);
    pow_dead[i] = pow_dead[i - 1] * fail;
  }

  long double sum = 0.0L, comp = 0.0L;
  const std::uint32_t masks = 1u << m;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    std::int64_t s = 0;
    int alive = 0;
    for (int j = 0; j < m; ++j)
      if (mask >> j & 1u) {
        s += loads[static_cast<std::size_t>(j)];
        ++alive;
      }
    if (s >= dem) detail::kahan_add(sum, comp, pow_alive[alive] * pow_dead[m - alive]);
  }
  return std::min(1.0, static_cast<double>(sum));
}

inline double reliability_bruteforce(const Allocation& alloc, double fail, std::int64_t dem) {
  return reliability_bruteforce(std::span<const std::int64_t>(alloc.loads), fail, dem);
}

// Monte Carlo estimate over `trials` sampled failure vectors. The generator
// is a seeded mt19937_64; uniforms in [0,1) are built as (x >> 11) * 2^-53 so
// the result is a bit-identical function of (seed, trials) on any platform.
// Trials run sequentially and consume exactly one draw per loaded machine.
inline ReliabilityEstimate reliability_montecarlo(std::span<const std::int64_t> loads, double fail,
                                                  std::int64_t dem, std::uint64_t trials,
                                                  std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("reliability_montecarlo: trials must be >= 1");
  if (!(fail >= 0.0 && fail < 1.0))
    throw std::invalid_argument("reliability_montecarlo: fail must lie in [0,1)");

  std::vector<std::int64_t> loaded;
  for (auto a : loads) {
    if (a < 0) throw std::invalid_argument("reliability_montecarlo: loads must be >= 0");
    if (a > 0) loaded.push_back(a);
  }

  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::int64_t alive = 0;
    for (auto a : loaded) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u >= fail) alive += a;
    }
    if (alive >= dem) ++hits;
  }

  ReliabilityEstimate est;
  est.value = static_cast<double>(hits) / static_cast<double>(trials);
  est.method = RelMethod::MonteCarlo;
  est.trials = trials;
  est.seed = seed;
  est.standard_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(trials));
  return est;
}

inline ReliabilityEstimate reliability_montecarlo(const Allocation& alloc, double fail,
                                                  std::int64_t dem, std::uint64_t trials,
                                                  std::uint64_t seed) {
  return reliability_montecarlo(std::span<const std::int64_t>(alloc.loads), fail, dem, trials,
                                seed);
}

// Whether any allocation at all can meet the SLA on m machines: the best
// achievable success probability is P(at least one machine alive) = 1 - fail^m,
// so the requirement is fail^m <= rel.
inline bool feasible(int m, double fail, double rel) {
  return std::pow(fail, static_cast<double>(m)) <= rel;
}

}  // namespace relalloc
