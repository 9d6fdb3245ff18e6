// energy.hpp - Energy versus machine-count curves for the shutdown-allowed
// problem, their minimization, and the machine-count selection rules.
//
// E_lb(k) = k estat + ecoeff k ( dem / ((1-fail) k + sqrt(lprime k)) )^a
// E_ub(k) = k estat + ecoeff (1/k^(a-1)) ( dem / ((1-fail) - sqrt(l/k)) )^a
//
// Both curves are convex on their domains (E_ub only for k above the pole
// l/(1-fail)^2), so a golden-section search finds the unique constrained
// minimizer; clamping to [1, m] happens at the bracket endpoints.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "relalloc/bounds.hpp"
#include "relalloc/model.hpp"
#include "relalloc/reliability.hpp"

namespace relalloc {

enum class CurveKind { LowerBound, HomoUpper };

// Fixed parameters of the two curves; the machine count k is the free variable.
struct EnergyCurveParams {
  double dem;
  double fail;
  double rel;
  RelCoeffs coeffs;
  double alpha;
  double estat;
  double ecoeff;

  EnergyCurveParams(const Platform& pf, const Sla& sla)
      : dem(static_cast<double>(sla.dem)),
        fail(pf.fail),
        rel(sla.rel),
        coeffs(),
        alpha(pf.alpha),
        estat(pf.estat),
        ecoeff(pf.ecoeff) {
    pf.validate();
    sla.validate();
    coeffs = rel_coeffs(sla.rel);
  }

  // Below this machine count the homogeneous upper-bound curve is infinite.
  double chernoff_pole() const { return coeffs.l / ((1.0 - fail) * (1.0 - fail)); }
};

inline double energy_curve(CurveKind kind, double k, const EnergyCurveParams& p) {
  if (!(k > 0.0)) throw std::domain_error("energy_curve: k must be positive");
  if (kind == CurveKind::LowerBound) {
    const double den = (1.0 - p.fail) * k + std::sqrt(p.coeffs.lprime * k);
    return k * p.estat + p.ecoeff * k * std::pow(p.dem / den, p.alpha);
  }
  const double d = (1.0 - p.fail) - std::sqrt(p.coeffs.l / k);
  if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
  return k * p.estat + p.ecoeff * std::pow(p.dem / d, p.alpha) / std::pow(k, p.alpha - 1.0);
}

// Golden-section minimizer of energy_curve(kind, ., p) over [lo, hi], to a
// relative tolerance of 1e-9 in the abscissa. Convexity makes the search
// exact up to that tolerance; a monotone curve converges to the nearer
// endpoint, which is the clamp behavior callers rely on.
inline double argmin_unimodal(CurveKind kind, const EnergyCurveParams& p, double lo, double hi) {
  if (!(lo > 0.0) || !(lo < hi)) throw std::domain_error("argmin_unimodal: invalid bracket");
  if (kind == CurveKind::HomoUpper && !(lo > p.chernoff_pole()))
    throw std::domain_error("argmin_unimodal: bracket must start strictly above the pole");

  constexpr double kRelTol = 1e-9;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = energy_curve(kind, c, p);
  double fd = energy_curve(kind, d, p);
  for (int it = 0; it < 300 && (b - a) > kRelTol * std::max(1.0, std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = energy_curve(kind, c, p);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = energy_curve(kind, d, p);
    }
  }
  double x = 0.5 * (a + b);
  // snap onto an endpoint the search has effectively reached
  const double snap = 10.0 * kRelTol * std::max(1.0, std::abs(hi));
  if (hi - x < snap) x = hi;
  if (x - lo < snap) x = lo;
  return x;
}

// Integer machine count each policy switches on when shutdown is allowed.
//
//  LowerBound: floor/ceil of the continuous E_lb minimizer, whichever is
//              lower (convexity makes that the integer optimum).
//  TheoHomo:   exhaustive scan of the integral Chernoff-homogeneous energy
//              k estat + ecoeff k ceil(...)^a; ties go to the smallest k.
//  BestHomo /
//  BestStep:   mean of the two clamped continuous minimizers of E_lb and
//              E_ub, rounded half up; k = m when E_ub is infinite on [1, m].
inline int best_k(Policy policy, const EnergyCurveParams& p, int m) {
  if (m < 1) throw std::invalid_argument("best_k: m must be >= 1");
  if (!feasible(m, p.fail, p.rel))
    throw infeasible_error("best_k: SLA unreachable, fail^m exceeds rel");

  const double md = static_cast<double>(m);

  if (policy == Policy::TheoHomo) {
    int best = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= m; ++k) {
      const double d = (1.0 - p.fail) - std::sqrt(p.coeffs.l / static_cast<double>(k));
      if (!(d > 0.0)) continue;
      const double cap = std::ceil(p.dem / (static_cast<double>(k) * d));
      const double e = k * p.estat + p.ecoeff * k * std::pow(cap, p.alpha);
      if (e < best_e) {
        best_e = e;
        best = k;
      }
    }
    if (best == 0) {
      const auto min_m = detail::chernoff_min_machines(p.coeffs.l, p.fail);
      throw chernoff_infeasible_error(
          "best_k: no machine count up to m admits the Chernoff bound, need m >= " +
              std::to_string(min_m),
          min_m);
    }
    return best;
  }

  if (m == 1) return 1;

  const double x_lb = argmin_unimodal(CurveKind::LowerBound, p, 1.0, md);

  if (policy == Policy::LowerBound) {
    const int kf = std::clamp(static_cast<int>(std::floor(x_lb)), 1, m);
    const int kc = std::clamp(static_cast<int>(std::ceil(x_lb)), 1, m);
    const double ef = energy_curve(CurveKind::LowerBound, kf, p);
    const double ec = energy_curve(CurveKind::LowerBound, kc, p);
    return ef <= ec ? kf : kc;
  }

  // BestHomo / BestStep mean rule
  const double pole = p.chernoff_pole();
  if (pole >= md) return m;  // E_ub infinite for every k <= m
  const double lo = std::max(1.0, pole * (1.0 + 1e-9));
  const double x_ub = lo < md ? argmin_unimodal(CurveKind::HomoUpper, p, lo, md) : md;
  const int k = static_cast<int>(std::floor(0.5 * (x_lb + x_ub) + 0.5));  // half up
  return std::clamp(k, 1, m);
}

}  // namespace relalloc
