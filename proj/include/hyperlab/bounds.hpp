#pragma once

// Closed-form lower-bound calculators: the query bound for the packed game,
// the constructive condition-number bound for geodesically convex functions
// on a disk, and the short-third-side computation that bound relies on.

#include "hyperlab/errors.hpp"
#include "hyperlab/game.hpp"
#include "hyperlab/gconvex.hpp"
#include "hyperlab/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperlab {

struct BoundReport {
  double r;
  double c;
  double C;
  big_uint n;
  double log_n;
  double volX;
  double query_lower_bound;
  double condition_ratio;  ///< r coth r, the dist^2 witness on the radius-r disk
};

/// Concrete query lower bound for the packed game at radius r, with noise
/// density bound c and precision C: log n / (3 log(c |X|)).
inline BoundReport main_lower_bound(double r, double c, double C) {
  if (!(r >= 8.0)) throw std::invalid_argument("main_lower_bound: need r >= 8");
  const Packing p = pack_circle(r, r / 2.0);
  const double log_n = to_double(p.log_count());
  const double vol = observation_space(r, C).volume;
  return {r, c, C, p.count(), log_n, vol, lower_bound_queries_log(log_n, c, vol),
          convexity_constants(r).ratio()};
}

struct ConditionBound {
  double constructive;  ///< 4 (r - 1) / c_side^2
  double witness;       ///< r coth r for dist^2 centred in the disk
  double c_side;
};

struct LemmaSolution {
  double lhs;
  double c_side;
  double residual;
};

/// (1 - sinh^2(r-1)/sinh^2 r) * tanh^2 r, written with expm1 so that it neither
/// overflows nor cancels for large r.
inline double lemma_lhs(double r) {
  if (!(r > 1.0)) throw std::invalid_argument("lemma_lhs: need r > 1");
  const double q = std::exp(-1.0) * std::expm1(-2.0 * (r - 1.0)) / std::expm1(-2.0 * r);
  const double t = std::tanh(r);
  return (1.0 - q * q) * t * t;
}

/// (cosh c - 1)^2 / sinh^2 c, which equals tanh^2(c / 2).
inline double lemma_rhs(double c) {
  const double t = std::tanh(c / 2.0);
  return t * t;
}

/// Solves lemma_rhs(c) = lemma_lhs(r) for c by bisection on (0, 20].
inline LemmaSolution lemma_last_solve(double r, double tol = 1e-10) {
  const double lhs = lemma_lhs(r);
  if (!(lhs < 1.0) || !(lhs < lemma_rhs(20.0))) throw NoRoot("lemma_last_solve: no root in (0, 20]");
  double lo = 0.0, hi = 20.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (lemma_rhs(mid) < lhs ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);
  return {lhs, c, std::abs(lhs - lemma_rhs(c))};
}

/// Constructive lower bound on beta / alpha for any alpha-strongly convex,
/// beta-smooth f on the radius-r disk whose minimiser is the centre.
///
/// Let x be a minimiser of f on the circle of radius r - 1 and y, y' the
/// points at radius r whose geodesic midpoint is x; their distance is c_side.
/// Strong convexity from the centre gives f(x) >= alpha (r - 1)^2 / 2, and
/// convexity along rays gives f(y), f(y') >= r / (r - 1) f(x). Smoothness
/// across the chord gives (f(y) + f(y')) / 2 <= f(x) + beta (c_side / 2)^2 / 2,
/// so f(x) / (r - 1) <= beta c_side^2 / 8, and beta / alpha >= 4 (r - 1) / c_side^2.
inline ConditionBound condition_ratio_lower(double r) {
  if (!(r > 2.0)) throw std::invalid_argument("condition_ratio_lower: need r > 2");
  const double c = lemma_last_solve(r).c_side;
  return {4.0 * (r - 1.0) / (c * c), convexity_constants(r).ratio(), c};
}

}  // namespace hyperlab
