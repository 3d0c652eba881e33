#pragma once

// Hyperboloid model of the hyperbolic plane (curvature -1).
//
// A point is (x0, x1, x2) with -x0^2 + x1^2 + x2^2 = -1 and x0 >= 1. Points
// and tangent vectors are stored in ambient coordinates, but the timelike
// component is always derived from the spatial ones, so every value built
// through this header lies on the sheet (or in the tangent plane) by
// construction.

#include "hyperlab/real.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace hyperlab {

/// Largest radius the experiment drivers accept. cosh(2 * 200) is still well
/// inside double range.
inline constexpr double kMaxRadius = 200.0;

template <Real R>
using Vec3 = std::array<R, 3>;

template <Real R>
inline R minkowski(const Vec3<R>& a, const Vec3<R>& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <Real R>
class HPoint {
 public:
  HPoint() : c_{R(1), R(0), R(0)} {}

  static HPoint origin() { return HPoint(); }

  /// Lifts spatial coordinates onto the sheet.
  static HPoint from_spatial(const R& x1, const R& x2) {
    using namespace detail;
    HPoint p;
    p.c_ = {sqrt(R(1) + x1 * x1 + x2 * x2), x1, x2};
    return p;
  }

  /// Validates ambient coordinates. The sheet condition is checked relative
  /// to x0^2, since that is the size of the terms that cancel.
  static HPoint from_ambient(const R& x0, const R& x1, const R& x2,
                             double tol = 1e-9) {
    using namespace detail;
    const Vec3<R> c{x0, x1, x2};
    const R q = minkowski(c, c);
    const R scale = std::max(R(1), R(x0 * x0));
    if (!(x0 >= R(1) - R(tol)) || abs(q + 1) > R(tol) * scale) {
      throw std::invalid_argument("HPoint: coordinates are not on the upper sheet");
    }
    return from_spatial(x1, x2);
  }

  /// Point at geodesic distance `radius` from the origin in direction `angle`.
  static HPoint polar(const R& radius, const R& angle) {
    using namespace detail;
    const R s = sinh(radius);
    HPoint p;
    p.c_ = {cosh(radius), s * cos(angle), s * sin(angle)};
    // Re-derive x0 from the spatial part so that all points share one lift.
    return from_spatial(p.c_[1], p.c_[2]);
  }

  const R& x0() const { return c_[0]; }
  const R& x1() const { return c_[1]; }
  const R& x2() const { return c_[2]; }
  const Vec3<R>& coords() const { return c_; }

  template <Real S>
  HPoint<S> cast() const {
    return HPoint<S>::from_spatial(real_cast<S>(c_[1]), real_cast<S>(c_[2]));
  }

  friend bool operator==(const HPoint& a, const HPoint& b) {
    return a.c_ == b.c_;
  }

 private:
  Vec3<R> c_;
};

/// Tangent vector at `base`, Minkowski-orthogonal to it.
template <Real R>
class TangentVec {
 public:
  TangentVec() = default;

  static TangentVec zero(const HPoint<R>& base) {
    return from_spatial(base, R(0), R(0));
  }

  static TangentVec from_spatial(const HPoint<R>& base, const R& v1, const R& v2) {
    TangentVec t;
    t.base_ = base;
    t.v_ = {(base.x1() * v1 + base.x2() * v2) / base.x0(), v1, v2};
    return t;
  }

  static TangentVec from_ambient(const HPoint<R>& base, const Vec3<R>& v,
                                 double tol = 1e-9) {
    using namespace detail;
    const R ip = minkowski(base.coords(), v);
    const R scale = std::max(R(1), R(base.x0() * (abs(v[0]) + abs(v[1]) + abs(v[2]))));
    if (abs(ip) > R(tol) * scale) {
      throw std::invalid_argument("TangentVec: vector is not orthogonal to its base");
    }
    return from_spatial(base, v[1], v[2]);
  }

  const HPoint<R>& base() const { return base_; }
  const Vec3<R>& vec() const { return v_; }

  /// Minkowski norm. Splitting the spatial part into components along and
  /// across the base's spatial direction gives <v,v> = perp^2 + par^2 / x0^2
  /// with no cancellation.
  R norm() const {
    using namespace detail;
    const R px = base_.x1();
    const R py = base_.x2();
    const R rho = sqrt(px * px + py * py);
    R par;
    R perp;
    if (rho == 0) {
      par = v_[1];
      perp = v_[2];
    } else {
      par = (v_[1] * px + v_[2] * py) / rho;
      perp = (v_[2] * px - v_[1] * py) / rho;
    }
    const R x0 = base_.x0();
    return sqrt(perp * perp + (par * par) / (x0 * x0));
  }

  TangentVec scaled(const R& s) const {
    return from_spatial(base_, s * v_[1], s * v_[2]);
  }

  friend TangentVec operator+(const TangentVec& a, const TangentVec& b) {
    if (!(a.base_ == b.base_)) {
      throw std::invalid_argument("TangentVec: adding vectors at different points");
    }
    return from_spatial(a.base_, a.v_[1] + b.v_[1], a.v_[2] + b.v_[2]);
  }

  friend TangentVec operator-(const TangentVec& a) { return a.scaled(R(-1)); }

 private:
  HPoint<R> base_;
  Vec3<R> v_{R(0), R(0), R(0)};
};

namespace detail {

// cosh(d(a, b)) - 1 along whichever algebraic route loses less precision:
// the inner product (-<a,b> - 1) or the chord (<a-b, a-b> / 2).
template <Real R>
R cosh_distance_minus_one(const HPoint<R>& a, const HPoint<R>& b) {
  const auto& p = a.coords();
  const auto& q = b.coords();
  const R eps = epsilon<R>();

  const R t00 = p[0] * q[0];
  const R t11 = p[1] * q[1];
  const R t22 = p[2] * q[2];
  const R inner = (t00 - t11 - t22) - 1;
  const R inner_err = eps * (abs(t00) + abs(t11) + abs(t22));

  const R d0 = p[0] - q[0];
  const R d1 = p[1] - q[1];
  const R d2 = p[2] - q[2];
  const R sq = d0 * d0 + d1 * d1 + d2 * d2;
  const R chord = (d1 * d1 + d2 * d2 - d0 * d0) / 2;
  const R scale = std::max(p[0], q[0]);
  const R chord_err = eps * (sq + 2 * sqrt(sq) * scale) / 2;

  const R t = chord_err < inner_err ? chord : inner;
  return t > 0 ? t : R(0);
}

}  // namespace detail

template <Real R>
R distance(const HPoint<R>& a, const HPoint<R>& b) {
  return acosh1p(detail::cosh_distance_minus_one(a, b));
}

template <Real R>
HPoint<R> exp_map(const TangentVec<R>& v) {
  using namespace detail;
  const HPoint<R>& x = v.base();
  const R n = v.norm();
  if (n == 0) return x;
  const R ch = cosh(n);
  const R sc = sinhc(n);
  return HPoint<R>::from_spatial(ch * x.x1() + sc * v.vec()[1],
                                 ch * x.x2() + sc * v.vec()[2]);
}

template <Real R>
HPoint<R> exp_map(const HPoint<R>& x, const TangentVec<R>& v) {
  if (!(v.base() == x)) {
    throw std::invalid_argument("exp_map: tangent vector is based at a different point");
  }
  return exp_map(v);
}

template <Real R>
TangentVec<R> log_map(const HPoint<R>& x, const HPoint<R>& y) {
  const R t = detail::cosh_distance_minus_one(x, y);
  const R d = acosh1p(t);
  if (d == 0) return TangentVec<R>::zero(x);
  const R ch = R(1) + t;
  // Projection of y onto the tangent plane at x: y + <x,y> x.
  const auto u = TangentVec<R>::from_spatial(x, y.x1() - ch * x.x1(),
                                             y.x2() - ch * x.x2());
  const R n = u.norm();
  if (n == 0) return TangentVec<R>::zero(x);
  return u.scaled(d / n);
}

/// Orthonormal tangent frame at x obtained by Gram-Schmidt from the ambient
/// basis vectors e1, e2. Closed forms avoid the cancellation a literal
/// Minkowski Gram-Schmidt would suffer far from the origin.
template <Real R>
struct Frame {
  TangentVec<R> e1;
  TangentVec<R> e2;
};

template <Real R>
Frame<R> tangent_frame(const HPoint<R>& x) {
  using namespace detail;
  const R s = sqrt(R(1) + x.x1() * x.x1());
  return {TangentVec<R>::from_spatial(x, s, x.x1() * x.x2() / s),
          TangentVec<R>::from_spatial(x, R(0), x.x0() / s)};
}

/// Coordinates of v in tangent_frame(v.base()).
template <Real R>
std::array<R, 2> frame_coords(const TangentVec<R>& v) {
  using namespace detail;
  const HPoint<R>& x = v.base();
  const R s2 = R(1) + x.x1() * x.x1();
  const R s = sqrt(s2);
  const R v1 = v.vec()[1];
  const R v2 = v.vec()[2];
  return {v1 / s, (v2 * s2 - v1 * x.x1() * x.x2()) / (x.x0() * s)};
}

template <Real R>
TangentVec<R> from_frame(const HPoint<R>& x, const R& a, const R& b) {
  using namespace detail;
  const R s = sqrt(R(1) + x.x1() * x.x1());
  return TangentVec<R>::from_spatial(x, a * s, (a * x.x1() * x.x2() + b * x.x0()) / s);
}

template <Real R>
struct CircleMeasures {
  R circumference;
  R area;
};

template <Real R>
CircleMeasures<R> circle_measures(const R& r) {
  using namespace detail;
  if (!(r >= 0)) throw std::invalid_argument("circle_measures: negative radius");
  const R h = sinh(r / 2);
  return {two_pi<R>() * sinh(r), 2 * two_pi<R>() * h * h};
}

/// Side opposite angle gamma in a geodesic triangle with adjacent sides a, b.
/// Uses sinh^2(c/2) = sinh^2((a-b)/2) + sinh(a) sinh(b) sin^2(gamma/2), the
/// half-angle form of the hyperbolic law of cosines, which stays accurate
/// for bearing errors far below double epsilon.
template <Real R>
R third_side(const R& a, const R& b, const R& gamma) {
  using namespace detail;
  if (!(a >= 0) || !(b >= 0)) throw std::invalid_argument("third_side: negative side");
  if (!(gamma >= 0) || gamma > pi<R>() * (1 + 4 * epsilon<R>())) {
    throw std::invalid_argument("third_side: angle outside [0, pi]");
  }
  const R h = sinh((a - b) / 2);
  const R s = sin(gamma / 2);
  const R q = h * h + sinh(a) * sinh(b) * s * s;
  return 2 * asinh(sqrt(q));
}

/// Lorentz transformation preserving the upper sheet.
template <Real R>
class Lorentz {
 public:
  Lorentz() : m_{{{R(1), R(0), R(0)}, {R(0), R(1), R(0)}, {R(0), R(0), R(1)}}} {}

  static Lorentz rotation(const R& theta) {
    using namespace detail;
    Lorentz l;
    const R c = cos(theta);
    const R s = sin(theta);
    l.m_[1] = {R(0), c, -s};
    l.m_[2] = {R(0), s, c};
    return l;
  }

  /// Boost with rapidity t along the x1 axis; moves the origin to polar(t, 0).
  static Lorentz boost(const R& t) {
    using namespace detail;
    Lorentz l;
    const R c = cosh(t);
    const R s = sinh(t);
    l.m_[0] = {c, s, R(0)};
    l.m_[1] = {s, c, R(0)};
    return l;
  }

  friend Lorentz operator*(const Lorentz& a, const Lorentz& b) {
    Lorentz out;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        R acc = 0;
        for (int k = 0; k < 3; ++k) acc += a.m_[i][k] * b.m_[k][j];
        out.m_[i][j] = acc;
      }
    }
    return out;
  }

  HPoint<R> operator()(const HPoint<R>& p) const {
    const auto& c = p.coords();
    auto row = [&](int i) { return m_[i][0] * c[0] + m_[i][1] * c[1] + m_[i][2] * c[2]; };
    return HPoint<R>::from_spatial(row(1), row(2));
  }

 private:
  std::array<std::array<R, 3>, 3> m_;
};

/// Poincare disk chart, for plotting only.
template <Real R>
std::array<R, 2> to_poincare(const HPoint<R>& p) {
  const R d = R(1) + p.x0();
  return {p.x1() / d, p.x2() / d};
}

}  // namespace hyperlab
