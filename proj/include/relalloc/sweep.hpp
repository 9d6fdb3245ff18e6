// sweep.hpp - Energy of every policy across a range of platform sizes,
// emitted as CSV rows for external plotting.
//
// Each row holds the no-shutdown total energies at k = m machines: all m
// machines pay static energy for the whole period, matching the fixed
// on-set setting the bounds are derived in. Machine counts where the SLA
// (or, for theo_homo, the Chernoff bound) is unreachable leave empty cells.

#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "relalloc/planner.hpp"

namespace relalloc {

struct SweepRow {
  int m = 0;
  std::optional<double> lower_bound;
  std::optional<double> theo_homo;
  std::optional<double> best_homo;
  std::optional<double> best_step;
};

struct SweepConfig {
  int m_min = 1;
  int m_max = 1;
  std::int64_t dem = 0;
  double fail = 0.0;
  double rel = 0.5;
  double alpha = 2.0;
  double estat = 0.0;
  double ecoeff = 1.0;

  void validate() const {
    if (m_min < 1 || m_max < m_min)
      throw std::invalid_argument("sweep: need 1 <= m-min <= m-max");
    Platform{m_max, fail, estat, ecoeff, alpha}.validate();
    Sla{dem, rel}.validate();
  }
};

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const Sla sla{cfg.dem, cfg.rel};
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.m_max - cfg.m_min) + 1);
  for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
    const Platform pf{m, cfg.fail, cfg.estat, cfg.ecoeff, cfg.alpha};
    SweepRow row;
    row.m = m;
    auto cell = [&](Policy policy) -> std::optional<double> {
      try {
        const PlanResult r = plan(policy, pf, sla, /*shutdown=*/false);
        if (r.success_prob && !(*r.success_prob >= 1.0 - sla.rel))
          throw std::logic_error("run_sweep: emitted plan failed its reliability re-check");
        return r.energy_total;
      } catch (const infeasible_error&) {
        return std::nullopt;
      }
    };
    row.lower_bound = cell(Policy::LowerBound);
    row.theo_homo = cell(Policy::TheoHomo);
    row.best_homo = cell(Policy::BestHomo);
    row.best_step = cell(Policy::BestStep);
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

// Shortest round-trip decimal form, so CSV output is full precision and
// byte-identical across runs.
inline std::string csv_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "m,lower_bound,theo_homo,best_homo,best_step\n";
  for (const auto& r : rows) {
    out << r.m;
    for (const auto* cell : {&r.lower_bound, &r.theo_homo, &r.best_homo, &r.best_step}) {
      out << ',';
      if (*cell) out << detail::csv_number(**cell);
    }
    out << '\n';
  }
}

}  // namespace relalloc
