#pragma once

// First-order strategies on the dist^2 family: Riemannian gradient descent,
// a heavy-ball variant, the one-shot compass walk, and a Euclidean
// accelerated baseline on a planar quadratic for contrast.

#include "hyperlab/oracle.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hyperlab {

enum class Termination { converged, budget };

template <class Point>
struct Trace {
  std::vector<Point> iterates;
  std::vector<double> distances_to_opt;  ///< ground truth, not oracle answers
  std::size_t query_count = 0;
  /// Oracle calls made before the first iterate within the target distance
  /// was produced; empty if it never got there.
  std::optional<std::size_t> queries_to_target;
  Termination terminated = Termination::budget;

  double final_distance() const { return distances_to_opt.back(); }
};

/// Step length policy. `smoothness()` uses 1 / (2 beta) with beta the largest
/// Hessian eigenvalue at the distance implied by the gradient, |g| / 2.
class StepSize {
 public:
  static StepSize fixed(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("StepSize: step must be positive");
    return StepSize(s);
  }
  static StepSize smoothness() { return StepSize(0.0); }

  bool adaptive() const { return value_ == 0.0; }
  double value() const { return value_; }

  template <Real R>
  R for_gradient(const R& gnorm) const {
    if (!adaptive()) return R(value_);
    return R(1) / (2 * convexity_constants(R(gnorm / 2)).beta);
  }

 private:
  explicit StepSize(double v) : value_(v) {}
  double value_;
};

struct RunOptions {
  std::size_t budget = 100000;
  double target = 0.0;  ///< success radius around the optimum, e.g. r / 5
};

namespace detail {

template <Real R, class Oracle>
void record(Trace<HPoint<R>>& tr, const Oracle& oracle, const HPoint<R>& x, double target) {
  const double d = to_double(distance(x, oracle.objective().xstar()));
  tr.iterates.push_back(x);
  tr.distances_to_opt.push_back(d);
  if (!tr.queries_to_target && d < target) tr.queries_to_target = oracle.calls();
}

template <Real R>
R grad_norm(const OracleAnswer<R>& a) {
  using std::sqrt;
  return sqrt(a.grad[0] * a.grad[0] + a.grad[1] * a.grad[1]);
}

}  // namespace detail

/// Riemannian gradient descent x <- exp_x(-step * g). Stops once the noisy
/// gradient certifies |g|/2 + C < target, or when the budget runs out.
template <Real R, GradientOracle<R> Oracle>
Trace<HPoint<R>> rgd(Oracle& oracle, const HPoint<R>& x0, const StepSize& step,
                     const RunOptions& opt) {
  Trace<HPoint<R>> tr;
  HPoint<R> x = x0;
  detail::record(tr, oracle, x, opt.target);
  const double C = oracle.precision();
  for (std::size_t k = 0; k < opt.budget; ++k) {
    const auto ans = oracle.query(x);
    const R g = detail::grad_norm(ans);
    if (g / 2 + C < R(opt.target)) {
      tr.terminated = Termination::converged;
      break;
    }
    const R s = step.for_gradient(g);
    x = exp_map(from_frame(x, R(-s * ans.grad[0]), R(-s * ans.grad[1])));
    detail::record(tr, oracle, x, opt.target);
  }
  tr.query_count = oracle.calls();
  return tr;
}

/// Heavy-ball analogue: v <- momentum * T(v) - step * g, x <- exp_x(v).
/// The previous velocity is carried to the new point as -log_{x_new}(x_old),
/// which is its parallel transport along the geodesic it generated.
template <Real R, GradientOracle<R> Oracle>
Trace<HPoint<R>> momentum_rgd(Oracle& oracle, const HPoint<R>& x0, const StepSize& step,
                              double momentum, const RunOptions& opt) {
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("momentum_rgd: momentum must lie in [0, 1)");
  }
  Trace<HPoint<R>> tr;
  HPoint<R> x = x0;
  TangentVec<R> carried = TangentVec<R>::zero(x);
  detail::record(tr, oracle, x, opt.target);
  const double C = oracle.precision();
  for (std::size_t k = 0; k < opt.budget; ++k) {
    const auto ans = oracle.query(x);
    const R g = detail::grad_norm(ans);
    if (g / 2 + C < R(opt.target)) {
      tr.terminated = Termination::converged;
      break;
    }
    const R s = step.for_gradient(g);
    const auto v = carried.scaled(R(momentum)) +
                   from_frame(x, R(-s * ans.grad[0]), R(-s * ans.grad[1]));
    const HPoint<R> next = exp_map(v);
    carried = -log_map(next, x);
    x = next;
    detail::record(tr, oracle, x, opt.target);
  }
  tr.query_count = oracle.calls();
  return tr;
}

/// One query, then walk the implied distance |g|/2 along the implied bearing.
template <Real R, GradientOracle<R> Oracle>
Trace<HPoint<R>> compass_walk(Oracle& oracle, const HPoint<R>& x0, double target = 0.0) {
  Trace<HPoint<R>> tr;
  detail::record(tr, oracle, x0, target);
  const auto ans = oracle.query(x0);
  const HPoint<R> x = exp_map(from_frame(x0, R(-ans.grad[0] / 2), R(-ans.grad[1] / 2)));
  detail::record(tr, oracle, x, target);
  tr.query_count = oracle.calls();
  tr.terminated = Termination::converged;
  return tr;
}

using Point2 = std::array<double, 2>;

/// f(x) = a1 (x1 - s1)^2 + a2 (x2 - s2)^2 in the Euclidean plane.
struct EuclidQuadratic {
  Point2 xstar{0.0, 0.0};
  double a1 = 1.0;
  double a2 = 1.0;

  double mu() const { return 2.0 * std::min(a1, a2); }
  double L() const { return 2.0 * std::max(a1, a2); }
  double value(const Point2& x) const {
    const double u = x[0] - xstar[0], v = x[1] - xstar[1];
    return a1 * u * u + a2 * v * v;
  }
  Point2 grad(const Point2& x) const {
    return {2.0 * a1 * (x[0] - xstar[0]), 2.0 * a2 * (x[1] - xstar[1])};
  }
  double dist(const Point2& x) const {
    return std::hypot(x[0] - xstar[0], x[1] - xstar[1]);
  }
};

struct EuclidAnswer {
  double fval;
  Point2 grad;
};

/// Same additive-noise model as the hyperbolic oracle, on a planar quadratic.
class EuclidOracle {
 public:
  EuclidOracle(EuclidQuadratic f, NoiseModel noise, std::uint64_t seed)
      : f_(f), noise_(noise), stream_(seed) {}

  EuclidAnswer query(const Point2& x) {
    ++calls_;
    const auto z = noise_.sample(stream_);
    const Point2 g = f_.grad(x);
    return {f_.value(x) + z[0], {g[0] + z[1], g[1] + z[2]}};
  }

  std::size_t calls() const { return calls_; }
  double precision() const { return noise_.precision(); }
  const EuclidQuadratic& objective() const { return f_; }

 private:
  EuclidQuadratic f_;
  NoiseModel noise_;
  NoiseStream stream_;
  std::size_t calls_ = 0;
};

/// Nesterov's constant-momentum method for strongly convex L-smooth f:
/// y = x + b (x - x_prev), x_next = y - grad(y) / L, b = (sqrt k - 1)/(sqrt k + 1).
/// Every query point is recorded as an iterate. Stops when (|g| + 2C) / mu <
/// target at the queried point.
inline Trace<Point2> euclid_agd(EuclidOracle& oracle, const Point2& x0, const RunOptions& opt) {
  const EuclidQuadratic& f = oracle.objective();
  const double L = f.L();
  const double mu = f.mu();
  const double sk = std::sqrt(L / mu);
  const double b = (sk - 1.0) / (sk + 1.0);
  const double C = oracle.precision();

  Trace<Point2> tr;
  auto record = [&](const Point2& p) {
    const double d = f.dist(p);
    tr.iterates.push_back(p);
    tr.distances_to_opt.push_back(d);
    if (!tr.queries_to_target && d < opt.target) tr.queries_to_target = oracle.calls();
  };
  Point2 prev = x0;
  Point2 x = x0;
  record(x);
  for (std::size_t k = 0; k < opt.budget; ++k) {
    const Point2 y{x[0] + b * (x[0] - prev[0]), x[1] + b * (x[1] - prev[1])};
    if (y != x) record(y);
    const auto ans = oracle.query(y);
    if ((std::hypot(ans.grad[0], ans.grad[1]) + 2.0 * C) / mu < opt.target) {
      tr.terminated = Termination::converged;
      break;
    }
    prev = x;
    x = {y[0] - ans.grad[0] / L, y[1] - ans.grad[1] / L};
    record(x);
  }
  tr.query_count = oracle.calls();
  return tr;
}

}  // namespace hyperlab
