// planner.hpp - Integral allocation policies.
//
//  theo_homo: Chernoff-rounded homogeneous allocation, valid by construction.
//  best_homo: minimal homogeneous capacity, via the exact binomial quantile.
//  best_step: best_homo capacity, then as many machines as possible demoted
//             by one instance, found by binary search on the exact check.
//  plan:      policy dispatch, with or without machine shutdown.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "relalloc/bounds.hpp"
#include "relalloc/energy.hpp"
#include "relalloc/model.hpp"
#include "relalloc/reliability.hpp"

namespace relalloc {

namespace detail {

inline Allocation padded_homogeneous(int m, int k, std::int64_t cap) {
  Allocation a;
  a.loads.assign(static_cast<std::size_t>(m), 0);
  std::fill_n(a.loads.begin(), k, cap);
  return a;
}

// Plan with zero demand: nothing to run, nothing switched on.
inline PlanResult trivial_plan(Policy policy, const Platform& pf) {
  PlanResult r;
  r.policy = policy;
  r.k = 0;
  if (policy != Policy::LowerBound) {
    r.allocation = Allocation{std::vector<std::int64_t>(static_cast<std::size_t>(pf.m), 0)};
    r.success_prob = 1.0;
  }
  return r;
}

// Capacity A = ceil(dem / (k (1 - fail - sqrt(l/k)))).
inline std::int64_t theo_homo_capacity(const Platform& pf, const Sla& sla, int k) {
  const RelCoeffs rc = rel_coeffs(sla.rel);
  const double d = chernoff_denominator(pf.fail, rc.l, static_cast<double>(k), "theo_homo");
  return static_cast<std::int64_t>(
      std::ceil(static_cast<double>(sla.dem) / (static_cast<double>(k) * d)));
}

// Minimal capacity A with P(|Alive| >= ceil(dem/A)) >= 1 - rel, i.e.
// A = ceil(dem / m') for the alive quantile m'.
inline std::int64_t best_homo_capacity(const Platform& pf, const Sla& sla, int k) {
  const int mprime = alive_quantile(k, pf.fail, sla.rel);
  if (mprime == 0)
    throw infeasible_error("best_homo: no alive quantile, SLA unreachable on these machines");
  return (sla.dem + mprime - 1) / mprime;
}

inline Allocation policy_allocation(Policy policy, const Platform& pf, const Sla& sla, int k) {
  switch (policy) {
    case Policy::TheoHomo:
      return padded_homogeneous(pf.m, k, theo_homo_capacity(pf, sla, k));
    case Policy::BestHomo:
      return padded_homogeneous(pf.m, k, best_homo_capacity(pf, sla, k));
    case Policy::BestStep: {
      const std::int64_t cap = best_homo_capacity(pf, sla, k);
      // Find the largest demotion count n1 such that k - n1 machines at cap
      // and n1 at cap - 1 still pass the exact check. Validity is monotone
      // nonincreasing in n1 (demotion only removes capacity), so a binary
      // search applies; n1 = 0 is valid by the best_homo construction.
      const double target = 1.0 - sla.rel;
      auto valid = [&](int n1) {
        Allocation a = padded_homogeneous(pf.m, k, cap);
        std::fill_n(a.loads.begin() + (k - n1), n1, cap - 1);
        return reliability_dp(a, pf.fail, sla.dem) >= target;
      };
      int lo = 0, hi = k;
      while (lo < hi) {
        const int mid = lo + (hi - lo + 1) / 2;
        if (valid(mid))
          lo = mid;
        else
          hi = mid - 1;
      }
      Allocation a = padded_homogeneous(pf.m, k, cap);
      std::fill_n(a.loads.begin() + (k - lo), lo, cap - 1);
      return a;
    }
    case Policy::LowerBound:
      break;
  }
  throw std::invalid_argument("policy_allocation: LowerBound has no allocation");
}

// Fill in the exact success probability and the energy breakdown.
inline PlanResult finish_plan(Policy policy, const Platform& pf, const Sla& sla, Allocation alloc,
                              std::optional<int> force_on) {
  PlanResult r;
  r.policy = policy;
  r.k = force_on ? *force_on : alloc.on_count();
  double dyn = 0.0;
  for (auto a : alloc.loads)
    if (a > 0) dyn += std::pow(static_cast<double>(a), pf.alpha);
  r.energy_static = r.k * pf.estat;
  r.energy_dynamic = pf.ecoeff * dyn;
  r.energy_total = r.energy_static + r.energy_dynamic;
  r.success_prob = reliability_dp(alloc, pf.fail, sla.dem);
  r.allocation = std::move(alloc);
  return r;
}

inline PlanResult lower_bound_plan(const Platform& pf, const Sla& sla, int k) {
  const EnergyCurveParams p(pf, sla);
  const double kd = static_cast<double>(k);
  const double den = (1.0 - p.fail) * kd + std::sqrt(p.coeffs.lprime * kd);
  PlanResult r;
  r.policy = Policy::LowerBound;
  r.k = k;
  r.energy_static = k * pf.estat;
  r.energy_dynamic = p.ecoeff * kd * std::pow(p.dem / den, p.alpha);
  r.energy_total = r.energy_static + r.energy_dynamic;
  return r;
}

}  // namespace detail

inline PlanResult theo_homo(const Platform& pf, const Sla& sla, int k) {
  pf.validate();
  sla.validate();
  if (k < 1 || k > pf.m) throw std::invalid_argument("theo_homo: k must lie in [1, m]");
  if (sla.dem == 0) return detail::trivial_plan(Policy::TheoHomo, pf);
  return detail::finish_plan(Policy::TheoHomo, pf, sla,
                             detail::policy_allocation(Policy::TheoHomo, pf, sla, k),
                             std::nullopt);
}

inline PlanResult best_homo(const Platform& pf, const Sla& sla, int k) {
  pf.validate();
  sla.validate();
  if (k < 1 || k > pf.m) throw std::invalid_argument("best_homo: k must lie in [1, m]");
  if (sla.dem == 0) return detail::trivial_plan(Policy::BestHomo, pf);
  return detail::finish_plan(Policy::BestHomo, pf, sla,
                             detail::policy_allocation(Policy::BestHomo, pf, sla, k),
                             std::nullopt);
}

inline PlanResult best_step(const Platform& pf, const Sla& sla, int k) {
  pf.validate();
  sla.validate();
  if (k < 1 || k > pf.m) throw std::invalid_argument("best_step: k must lie in [1, m]");
  if (sla.dem == 0) return detail::trivial_plan(Policy::BestStep, pf);
  return detail::finish_plan(Policy::BestStep, pf, sla,
                             detail::policy_allocation(Policy::BestStep, pf, sla, k),
                             std::nullopt);
}

namespace detail {

// Try every machine count and keep the cheapest integral plan, smallest k
// on ties. Exact but expensive next to the mean rule; experimentation only.
inline int scan_k(Policy policy, const Platform& pf, const Sla& sla) {
  int best = 0;
  double best_e = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= pf.m; ++k) {
    try {
      const PlanResult r =
          finish_plan(policy, pf, sla, policy_allocation(policy, pf, sla, k), std::nullopt);
      if (r.energy_total < best_e) {
        best_e = r.energy_total;
        best = k;
      }
    } catch (const infeasible_error&) {
    }
  }
  if (best == 0) throw infeasible_error("plan: no machine count admits a valid allocation");
  return best;
}

}  // namespace detail

// Plan under the chosen policy. With shutdown the machine count comes from
// best_k and off machines cost nothing; without it all m machines stay on
// and pay static energy, even the ones best_step demoted to zero load.
// exhaustive_k replaces the mean rule of BestHomo/BestStep with a full scan
// of the machine count (shutdown only; off by default).
inline PlanResult plan(Policy policy, const Platform& pf, const Sla& sla, bool shutdown,
                       bool exhaustive_k = false) {
  pf.validate();
  sla.validate();
  if (sla.dem == 0) return detail::trivial_plan(policy, pf);
  if (!feasible(pf.m, pf.fail, sla.rel))
    throw infeasible_error("plan: SLA unreachable, fail^m exceeds rel");

  int k = pf.m;
  if (shutdown) {
    if (exhaustive_k && (policy == Policy::BestHomo || policy == Policy::BestStep)) {
      k = detail::scan_k(policy, pf, sla);
    } else {
      const EnergyCurveParams p(pf, sla);
      k = best_k(policy, p, pf.m);
    }
  }
  if (policy == Policy::LowerBound) return detail::lower_bound_plan(pf, sla, k);

  Allocation alloc = detail::policy_allocation(policy, pf, sla, k);
  const std::optional<int> force_on = shutdown ? std::nullopt : std::optional<int>(pf.m);
  return detail::finish_plan(policy, pf, sla, std::move(alloc), force_on);
}

}  // namespace relalloc
