#pragma once

// f(x) = dist(x, x*)^2 with exact first and second order information.
//
// Along a unit-speed geodesic the second derivative of d^2 is 2 in the
// radial direction and 2 d coth(d) across it. Everything downstream only
// uses the ratio d coth(d).

#include "hyperlab/geometry.hpp"

#include <stdexcept>
#include <utility>

namespace hyperlab {

template <Real R>
class DistSqObjective {
 public:
  explicit DistSqObjective(HPoint<R> xstar)
      : xstar_(std::move(xstar)), r_star_(distance(HPoint<R>::origin(), xstar_)) {}

  const HPoint<R>& xstar() const { return xstar_; }
  const R& r_star() const { return r_star_; }

  R value(const HPoint<R>& x) const {
    const R d = distance(x, xstar_);
    return d * d;
  }

  /// -2 log_x(x*); the zero vector at x* itself.
  TangentVec<R> grad(const HPoint<R>& x) const {
    return log_map(x, xstar_).scaled(R(-2));
  }

  /// Second derivative of value along t -> exp_map(x, t u), |u| = 1.
  R hessian_form(const HPoint<R>& x, const TangentVec<R>& u) const {
    using namespace detail;
    const R d = distance(x, xstar_);
    if (d == 0) return R(2);
    const R un = u.norm();
    if (abs(un - 1) > R(1e-6)) {
      throw std::invalid_argument("hessian_form: direction is not a unit vector");
    }
    const auto toward = frame_coords(log_map(x, xstar_));
    const auto dir = frame_coords(u);
    const R cosphi = (toward[0] * dir[0] + toward[1] * dir[1]) / (d * un);
    R c2 = cosphi * cosphi;
    if (c2 > 1) c2 = 1;
    return 2 * c2 + 2 * x_coth_x(d) * (1 - c2);
  }

 private:
  HPoint<R> xstar_;
  R r_star_;
};

template <Real R>
struct ConvexityConstants {
  R alpha;
  R beta;
  R ratio() const { return beta / alpha; }
};

/// Extreme Hessian eigenvalues of d^2 at distance d from the optimum.
template <Real R>
ConvexityConstants<R> convexity_constants(const R& d) {
  if (!(d >= 0)) throw std::invalid_argument("convexity_constants: negative distance");
  return {R(2), 2 * x_coth_x(d)};
}

}  // namespace hyperlab
