// bounds.hpp - Closed-form replica and energy bounds.
//
// The lower bounds (min_rep, min_energy_frac) follow from a Hoeffding tail
// bound combined with Hoelder's inequality: no valid allocation can use fewer
// total instances, or less dynamic energy, than these values. The upper
// bounds (max_rep, max_energy_frac) come from a Chernoff bound on the number
// of alive machines: a fractional homogeneous allocation of max_rep / m per
// machine is guaranteed to meet the SLA. dispersion_bound limits how spread
// out any energy-competitive valid allocation can be.

#pragma once

#include <cmath>
#include <string>

#include "relalloc/model.hpp"

namespace relalloc {

inline RelCoeffs rel_coeffs(double rel) {
  if (!(rel > 0.0 && rel < 1.0))
    throw std::domain_error("rel_coeffs: rel must lie in (0,1)");
  // log1p avoids cancellation in -ln(1-rel) when rel is small
  return RelCoeffs{-std::log(rel) / 2.0, -std::log1p(-rel) / 2.0};
}

namespace detail {

// Smallest integer machine count with 1 - fail - sqrt(l/m) > 0.
inline std::int64_t chernoff_min_machines(double l, double fail) {
  const double pole = l / ((1.0 - fail) * (1.0 - fail));
  return static_cast<std::int64_t>(std::floor(pole)) + 1;
}

inline double chernoff_denominator(double fail, double l, double m, const char* who) {
  const double d = 1.0 - fail - std::sqrt(l / m);
  if (!(d > 0.0)) {
    const auto min_m = chernoff_min_machines(l, fail);
    throw chernoff_infeasible_error(
        std::string(who) + ": Chernoff bound unusable at this machine count, need m >= " +
            std::to_string(min_m),
        min_m);
  }
  return d;
}

}  // namespace detail

// Necessary total instance count: dem / (1 - fail + sqrt(lprime)).
inline double min_rep(double dem, double fail, double rel) {
  const RelCoeffs rc = rel_coeffs(rel);
  return dem / (1.0 - fail + std::sqrt(rc.lprime));
}

// Sufficient homogeneous total: dem / (1 - fail - sqrt(l/m)).
inline double max_rep(double dem, double fail, double rel, int m) {
  const RelCoeffs rc = rel_coeffs(rel);
  const double d = detail::chernoff_denominator(fail, rc.l, static_cast<double>(m), "max_rep");
  return dem / d;
}

// Necessary dynamic energy (ecoeff = 1) on m machines:
//   ( dem / ((1-fail) m^(1-1/a) + sqrt(lprime) m^(1/2-1/a)) )^a
inline double min_energy_frac(double dem, double fail, double rel, int m, double alpha) {
  const RelCoeffs rc = rel_coeffs(rel);
  const double mm = static_cast<double>(m);
  const double den = (1.0 - fail) * std::pow(mm, 1.0 - 1.0 / alpha) +
                     std::sqrt(rc.lprime) * std::pow(mm, 0.5 - 1.0 / alpha);
  return std::pow(dem / den, alpha);
}

// Sufficient dynamic energy for a fractional homogeneous allocation:
//   ( dem / ((1-fail) m^(1-1/a) - sqrt(l) m^(1/2-1/a)) )^a  =  m (max_rep/m)^a
inline double max_energy_frac(double dem, double fail, double rel, int m, double alpha) {
  const RelCoeffs rc = rel_coeffs(rel);
  const double mm = static_cast<double>(m);
  detail::chernoff_denominator(fail, rc.l, mm, "max_energy_frac");
  const double den = (1.0 - fail) * std::pow(mm, 1.0 - 1.0 / alpha) -
                     std::sqrt(rc.l) * std::pow(mm, 0.5 - 1.0 / alpha);
  return std::pow(dem / den, alpha);
}

// Bound on m^alpha * V' for any valid allocation with energy <= max_energy,
// where V' = sum((load_j^2)^(a/2))/m - (sum(load_j^2)/m)^(a/2):
//   ( dem/(1-fail-sqrt(l/m)) )^a - ( dem/(1-fail+sqrt(lprime)) )^a
inline double dispersion_bound(double dem, double fail, double rel, int m, double alpha) {
  const RelCoeffs rc = rel_coeffs(rel);
  const double d =
      detail::chernoff_denominator(fail, rc.l, static_cast<double>(m), "dispersion_bound");
  return std::pow(dem / d, alpha) - std::pow(dem / (1.0 - fail + std::sqrt(rc.lprime)), alpha);
}

}  // namespace relalloc
