// acceptance.cpp - End-to-end acceptance checks. Each criterion prints one
// PASS/FAIL line with the measured quantities; the exit status is the number
// of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "relalloc/bounds.hpp"
#include "relalloc/energy.hpp"
#include "relalloc/planner.hpp"
#include "relalloc/reliability.hpp"
#include "relalloc/sweep.hpp"

using namespace relalloc;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<std::int64_t> kMotivating{10, 10, 5, 5, 5, 5, 5, 5, 5, 5};
const Platform kTen{10, 0.1, 0.0, 1.0, 2.0};
const Sla kTenSla{20, 4.5e-6};
constexpr std::int64_t kFigDem = 500;
constexpr double kFigFail = 0.01;
constexpr double kFigRel = 1e-6;
constexpr double kFigAlpha = 2.0;
constexpr int kFigM = 600;

// One full sweep plus the per-machine-count plans it is built from.
struct SweepData {
  double estat = 0.0;
  std::vector<SweepRow> rows;
  // plans[m - 1][policy], empty when that policy is infeasible at m
  std::vector<std::array<std::optional<PlanResult>, 4>> plans;
};

SweepData compute_sweep(double estat) {
  SweepData data;
  data.estat = estat;
  data.rows = run_sweep(SweepConfig{1, kFigM, kFigDem, kFigFail, kFigRel, kFigAlpha, estat, 1.0});
  data.plans.resize(kFigM);
  const Sla sla{kFigDem, kFigRel};
  for (int m = 1; m <= kFigM; ++m) {
    const Platform pf{m, kFigFail, estat, 1.0, kFigAlpha};
    int slot = 0;
    for (Policy pol :
         {Policy::LowerBound, Policy::TheoHomo, Policy::BestHomo, Policy::BestStep}) {
      try {
        data.plans[m - 1][slot] = plan(pol, pf, sla, /*shutdown=*/false);
      } catch (const infeasible_error&) {
      }
      ++slot;
    }
  }
  return data;
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double dp = reliability_dp(std::span<const std::int64_t>(kMotivating), 0.1, 20);
  const double bf = reliability_bruteforce(std::span<const std::int64_t>(kMotivating), 0.1, 20);
  const double elapsed = seconds_since(t0);

  std::int64_t total = 0;
  for (auto a : kMotivating) total += a;
  const Allocation alloc{kMotivating};
  const double edyn = energy_of(alloc, kTen);

  const bool ok = std::abs(dp - bf) <= 1e-12 && std::abs((1.0 - dp) - 4.4479e-6) <= 1e-12 &&
                  total == 60 && edyn == 400.0 && elapsed < 1.0;
  report(1, ok, "motivating fixture: exact reliability, 60 instances, E_dyn 400",
         "failure=" + fmt(1.0 - dp) + " |dp-bf|=" + fmt(std::abs(dp - bf)) + " total=" +
             std::to_string(total) + " E_dyn=" + fmt(edyn) + " t=" + fmt(elapsed) + "s");
}

void criterion2() {
  const PlanResult r = best_homo(kTen, kTenSla, 10);
  std::int64_t cap = 0;
  for (auto a : r.allocation->loads) cap = std::max(cap, a);
  const Allocation six{std::vector<std::int64_t>(10, 6)};
  const double demoted = reliability_dp(six, 0.1, 20);
  const bool ok = cap == 7 && r.allocation->total() == 70 && demoted < 1.0 - kTenSla.rel;
  report(2, ok, "homogeneous capacity 7 is minimal at ten machines",
         "cap=" + std::to_string(cap) + " capacity-6 failure=" + fmt(1.0 - demoted) +
             " > rel=" + fmt(kTenSla.rel));
}

void criterion3() {
  const PlanResult r = best_step(kTen, kTenSla, 10);
  int demoted = 0;
  for (auto a : r.allocation->loads) demoted += (a == 6);
  const double dp = *r.success_prob;
  const double bf = reliability_bruteforce(*r.allocation, 0.1, 20);
  const bool ok = demoted == 4 && r.allocation->total() == 66 &&
                  std::abs((1.0 - dp) - 3.2896e-6) <= 1e-12 && std::abs(dp - bf) <= 1e-12;
  report(3, ok, "step plan demotes 4 machines to total 66",
         "demoted=" + std::to_string(demoted) + " total=" +
             std::to_string(r.allocation->total()) + " failure=" + fmt(1.0 - dp) +
             " |dp-bf|=" + fmt(std::abs(dp - bf)));
}

void criterion4(const SweepData& a, const SweepData& b, double elapsed) {
  int checked = 0;
  std::string why;
  bool ok = true;
  for (const SweepData* data : {&a, &b}) {
    for (int m = 1; m <= kFigM; ++m) {
      const SweepRow& row = data->rows[m - 1];
      const auto& plans = data->plans[m - 1];
      if (!feasible(m, kFigFail, kFigRel)) {
        if (row.lower_bound || row.theo_homo || row.best_homo || row.best_step) {
          ok = false;
          why = "infeasible m=" + std::to_string(m) + " has cells";
        }
        continue;
      }
      ++checked;
      if (!row.lower_bound || !row.best_homo || !row.best_step) {
        ok = false;
        why = "missing cell at m=" + std::to_string(m);
        continue;
      }
      // dominance among present cells
      if (!(*row.lower_bound <= *row.best_step && *row.best_step <= *row.best_homo &&
            (!row.theo_homo || *row.best_homo <= *row.theo_homo))) {
        ok = false;
        why = "ordering violated at m=" + std::to_string(m) + " estat=" + fmt(data->estat);
      }
      // every emitted plan passes the exact check
      for (const auto& pr : plans) {
        if (!pr || !pr->success_prob) continue;
        if (!(*pr->success_prob >= 1.0 - kFigRel)) {
          ok = false;
          why = "invalid plan at m=" + std::to_string(m);
        }
      }
      // cross-check the CSV rows against the plans they came from
      if (std::abs(*row.lower_bound - plans[0]->energy_total) > 1e-9 ||
          std::abs(*row.best_step - plans[3]->energy_total) > 1e-9) {
        ok = false;
        why = "row/plan mismatch at m=" + std::to_string(m);
      }
    }
  }
  ok = ok && elapsed < 60.0;
  report(4, ok, "figure sweep ordering and validity at estat 0 and 50",
         (why.empty() ? "lower_bound <= best_step <= best_homo <= theo_homo on " +
                            std::to_string(checked) + " feasible rows"
                      : why) +
             ", t=" + fmt(elapsed) + "s");
}

void criterion5(const SweepData& fifty) {
  double worst = 0.0;
  int worst_m = 0;
  for (int m = 26; m <= kFigM; ++m) {
    const SweepRow& row = fifty.rows[m - 1];
    if (!row.lower_bound || !row.best_homo) continue;
    const double r = *row.best_homo / *row.lower_bound;
    if (r > worst) {
      worst = r;
      worst_m = m;
    }
  }
  const bool ok = worst < 1.55 && worst > 0.0;
  report(5, ok, "best_homo stays within 1.55 of the lower bound for m > 25",
         "max ratio=" + fmt(worst) + " at m=" + std::to_string(worst_m));
}

void criterion6() {
  std::mt19937 rng(424242);
  const double fails[] = {0.0, 0.1, 0.5, 0.9};
  double worst = 0.0;
  for (int it = 0; it < 200; ++it) {
    const int m = 1 + static_cast<int>(rng() % 12);
    std::vector<std::int64_t> loads;
    std::int64_t total = 0;
    for (int j = 0; j < m; ++j) {
      loads.push_back(static_cast<std::int64_t>(rng() % 21));
      total += loads.back();
    }
    const double fail = fails[rng() % 4];
    const std::int64_t dem = total == 0 ? 0 : static_cast<std::int64_t>(rng() % (total + 1));
    const double dp = reliability_dp(std::span<const std::int64_t>(loads), fail, dem);
    const double bf = reliability_bruteforce(std::span<const std::int64_t>(loads), fail, dem);
    worst = std::max(worst, std::abs(dp - bf));
  }
  report(6, worst <= 1e-12, "dynamic program matches brute force on 200 random allocations",
         "max |dp-bf|=" + fmt(worst));
}

void criterion7() {
  const std::vector<std::int64_t> four{5, 5, 5, 5};
  const auto a = reliability_montecarlo(std::span<const std::int64_t>(four), 0.5, 10, 1000000, 42);
  const auto b = reliability_montecarlo(std::span<const std::int64_t>(four), 0.5, 10, 1000000, 42);
  const bool ok = std::abs(a.value - 0.6875) <= 0.002 && a.value == b.value;
  report(7, ok, "Monte Carlo calibration and seed determinism",
         "estimate=" + fmt(a.value) + " |err|=" + fmt(std::abs(a.value - 0.6875)) +
             " repeat=" + (a.value == b.value ? "identical" : "DIFFERENT"));
}

void criterion8(const SweepData& a, const SweepData& b) {
  const double lo_rep = min_rep(static_cast<double>(kFigDem), kFigFail, kFigRel);
  bool ok = true;
  std::string why;
  int checked = 0;
  for (const SweepData* data : {&a, &b}) {
    for (int m = 1; m <= kFigM; ++m) {
      const double lo_energy =
          min_energy_frac(static_cast<double>(kFigDem), kFigFail, kFigRel, m, kFigAlpha);
      for (int slot = 1; slot < 4; ++slot) {
        const auto& pr = data->plans[m - 1][slot];
        if (!pr) continue;
        ++checked;
        const double total = static_cast<double>(pr->allocation->total());
        if (!(total >= lo_rep) || !(pr->energy_dynamic >= lo_energy)) {
          ok = false;
          why = "bound violated at m=" + std::to_string(m);
        }
        if (slot == 1 && !(*pr->success_prob >= 1.0 - kFigRel)) {
          ok = false;
          why = "Chernoff guarantee broken at m=" + std::to_string(m);
        }
      }
    }
  }
  report(8, ok, "every plan respects the replica and energy lower bounds",
         (why.empty() ? std::to_string(checked) + " plans checked, MinRep=" + fmt(lo_rep) : why));
}

void criterion9() {
  const Platform pf{kFigM, kFigFail, 50.0, 1.0, kFigAlpha};
  const Sla sla{kFigDem, kFigRel};
  const EnergyCurveParams p(pf, sla);
  bool convex = true;
  for (CurveKind kind : {CurveKind::LowerBound, CurveKind::HomoUpper}) {
    for (int k = 2; k < kFigM; ++k) {
      const double fm = energy_curve(kind, k - 1, p);
      const double f0 = energy_curve(kind, k, p);
      const double fp = energy_curve(kind, k + 1, p);
      if (!std::isfinite(fm) || !std::isfinite(f0) || !std::isfinite(fp)) continue;
      if (fm + fp - 2.0 * f0 < -1e-6 * std::abs(f0)) convex = false;
    }
  }

  auto grid_argmin = [&](CurveKind kind, double lo, double hi) {
    double best_x = lo, best_f = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
      const double x = lo + (hi - lo) * i / 9999.0;
      const double f = energy_curve(kind, x, p);
      if (f < best_f) {
        best_f = f;
        best_x = x;
      }
    }
    return best_x;
  };
  const double x_lb = argmin_unimodal(CurveKind::LowerBound, p, 1.0, kFigM);
  const double g_lb = grid_argmin(CurveKind::LowerBound, 1.0, kFigM);
  const double lo_ub = p.chernoff_pole() * (1.0 + 1e-9);
  const double x_ub = argmin_unimodal(CurveKind::HomoUpper, p, lo_ub, kFigM);
  const double g_ub = grid_argmin(CurveKind::HomoUpper, lo_ub, kFigM);
  const bool agree =
      std::abs(x_lb - g_lb) <= 1e-3 * g_lb && std::abs(x_ub - g_ub) <= 1e-3 * g_ub;

  const int k = best_k(Policy::LowerBound, p, kFigM);
  const double ek = energy_curve(CurveKind::LowerBound, k, p);
  const bool integer_min = ek <= energy_curve(CurveKind::LowerBound, k - 1, p) &&
                           ek <= energy_curve(CurveKind::LowerBound, k + 1, p);

  report(9, convex && agree && integer_min, "curve convexity and minimizer agreement",
         "x_lb=" + fmt(x_lb) + " grid=" + fmt(g_lb) + ", x_ub=" + fmt(x_ub) + " grid=" +
             fmt(g_ub) + ", best_k=" + std::to_string(k));
}

void criterion10() {
  const double dem = static_cast<double>(kFigDem);
  const int grid[] = {100, 1000, 10000, 100000, 1000000};
  bool energy_monotone = true;
  double prev_e = std::numeric_limits<double>::infinity();
  double final_e = 0.0;
  for (int m : grid) {
    const double r =
        max_energy_frac(dem, kFigFail, kFigRel, m, kFigAlpha) /
        min_energy_frac(dem, kFigFail, kFigRel, m, kFigAlpha);
    if (!(r < prev_e)) energy_monotone = false;
    prev_e = r;
    final_e = r;
  }

  const double limit =
      (1.0 - kFigFail + std::sqrt(rel_coeffs(kFigRel).lprime)) / (1.0 - kFigFail);
  bool rep_gap_monotone = true;
  double prev_gap = std::numeric_limits<double>::infinity();
  double final_gap = 0.0;
  for (int m : grid) {
    const double r = max_rep(dem, kFigFail, kFigRel, m) / min_rep(dem, kFigFail, kFigRel);
    const double gap = std::abs(r - limit);
    if (!(gap < prev_gap)) rep_gap_monotone = false;
    prev_gap = gap;
    final_gap = gap;
  }

  const bool ok =
      energy_monotone && final_e < 1.01 && rep_gap_monotone && final_gap <= 1e-3;
  report(10, ok, "asymptotic ratios on the m grid up to 1e6",
         "energy ratio at 1e6=" + fmt(final_e) + " (monotone=" +
             (energy_monotone ? "yes" : "no") + "), rep ratio gap to " + fmt(limit) + " at 1e6=" +
             fmt(final_gap) + (final_gap <= 1e-3 ? "" : " > 1e-3"));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();

  const auto t0 = std::chrono::steady_clock::now();
  const SweepData zero = compute_sweep(0.0);
  const SweepData fifty = compute_sweep(50.0);
  const double sweep_seconds = seconds_since(t0);
  criterion4(zero, fifty, sweep_seconds);
  criterion5(fifty);

  criterion6();
  criterion7();
  criterion8(zero, fifty);
  criterion9();
  criterion10();

  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
