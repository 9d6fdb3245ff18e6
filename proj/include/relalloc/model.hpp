// model.hpp - Core domain types: platform, SLA, allocations, plan results,
// and the energy accounting of an allocation.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace relalloc {

// Thrown when no allocation can meet the SLA on the given platform.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when the Chernoff denominator 1 - fail - sqrt(l/m) is not positive,
// i.e. the homogeneous upper-bound construction is unusable at this machine
// count. Reported separately from infeasible_error so callers can fall back
// to the exact-binomial policies.
class chernoff_infeasible_error : public infeasible_error {
 public:
  chernoff_infeasible_error(std::string msg, std::int64_t min_feasible_machines)
      : infeasible_error(std::move(msg)), min_feasible_machines_(min_feasible_machines) {}

  // Smallest machine count that makes the denominator positive.
  std::int64_t min_feasible_machines() const { return min_feasible_machines_; }

 private:
  std::int64_t min_feasible_machines_;
};

// A pool of m identical machines. Each machine independently dies with
// probability `fail` during the period. A switched-on machine pays `estat`
// plus `ecoeff * load^alpha` when it carries `load` instances (DVFS sets the
// capacity equal to the load).
struct Platform {
  int m = 1;            // machine count
  double fail = 0.0;    // per-machine failure probability over the period
  double estat = 0.0;   // static (leakage) energy per switched-on machine
  double ecoeff = 1.0;  // dynamic-energy coefficient, uniform across machines
  double alpha = 2.0;   // dynamic-energy exponent

  void validate() const {
    if (m < 1) throw std::invalid_argument("Platform: machine count must be >= 1");
    if (!(fail >= 0.0 && fail < 1.0))
      throw std::invalid_argument("Platform: fail must lie in [0,1)");
    if (!(estat >= 0.0)) throw std::invalid_argument("Platform: estat must be >= 0");
    if (!(ecoeff > 0.0)) throw std::invalid_argument("Platform: ecoeff must be > 0");
    if (!(alpha >= 2.0)) throw std::invalid_argument("Platform: alpha must be >= 2");
  }
};

// Service-level agreement: at least `dem` instances must be alive at the end
// of the period, except with probability at most `rel`.
struct Sla {
  std::int64_t dem = 0;  // required number of alive instances
  double rel = 0.5;      // maximum allowed violation probability

  void validate() const {
    if (dem < 0) throw std::invalid_argument("Sla: demand must be >= 0");
    if (!(rel > 0.0 && rel < 1.0)) throw std::invalid_argument("Sla: rel must lie in (0,1)");
  }
};

// Integral instance counts per machine. A machine is on iff its load is
// positive (unless an explicit on-set size is forced, see energy_of).
struct Allocation {
  std::vector<std::int64_t> loads;

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto a : loads) s += a;
    return s;
  }

  int on_count() const {
    int n = 0;
    for (auto a : loads) n += (a > 0);
    return n;
  }

  void validate(const Platform& pf) const {
    if (loads.size() != static_cast<std::size_t>(pf.m))
      throw std::invalid_argument("Allocation: length must equal the platform machine count");
    for (auto a : loads)
      if (a < 0) throw std::invalid_argument("Allocation: loads must be >= 0");
  }
};

// Log-reliability constants shared by the tail bounds:
//   l      = -ln(rel) / 2
//   lprime = -ln(1 - rel) / 2
// lprime < l whenever rel < 1/2.
struct RelCoeffs {
  double l = 0.0;
  double lprime = 0.0;
};

enum class Policy { LowerBound, TheoHomo, BestHomo, BestStep };

inline const char* policy_name(Policy p) {
  switch (p) {
    case Policy::LowerBound: return "lower-bound";
    case Policy::TheoHomo: return "theo-homo";
    case Policy::BestHomo: return "best-homo";
    case Policy::BestStep: return "best-step";
  }
  return "?";
}

// Outcome of a planning policy. LowerBound is a bound, not a plan: it carries
// energies only, with no allocation and no success probability.
struct PlanResult {
  Policy policy = Policy::LowerBound;
  int k = 0;  // number of machines switched on
  std::optional<Allocation> allocation;
  std::optional<double> success_prob;  // exact P(at least dem instances survive)
  double energy_static = 0.0;
  double energy_dynamic = 0.0;
  double energy_total = 0.0;
};

// Energy of an allocation: on_count * estat + ecoeff * sum(load^alpha).
// By default a machine is on iff its load is positive; `force_on` fixes the
// on-set size instead (it must cover every loaded machine), which expresses
// the no-shutdown problem via force_on = m.
inline double energy_of(const Allocation& alloc, const Platform& pf,
                        std::optional<int> force_on = std::nullopt) {
  alloc.validate(pf);
  const int loaded = alloc.on_count();
  int on = loaded;
  if (force_on) {
    if (*force_on < loaded)
      throw std::invalid_argument("energy_of: force_on smaller than the number of loaded machines");
    on = *force_on;
  }
  double dyn = 0.0;
  for (auto a : alloc.loads)
    if (a > 0) dyn += std::pow(static_cast<double>(a), pf.alpha);
  return on * pf.estat + pf.ecoeff * dyn;
}

}  // namespace relalloc
