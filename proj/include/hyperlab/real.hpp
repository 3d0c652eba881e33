#pragma once

// Scalar types used across the library.
//
// Every geometric routine is a template over a floating type. `double` is
// fine for points within a few units of the origin; points far out on the
// hyperboloid have coordinates of size e^R and lose tangential precision at
// a rate of roughly eps * e^R, so large-radius work uses `hp_real`.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <concepts>
#include <limits>
#include <type_traits>

namespace hyperlab {

/// 100 significant decimal digits, expression templates off so that `auto`
/// and generic lambdas behave like they do for `double`.
using hp_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<100>,
    boost::multiprecision::et_off>;

template <class T>
concept Real = std::floating_point<T> || std::same_as<T, hp_real>;

template <Real R>
inline R pi() {
  return boost::math::constants::pi<R>();
}

template <Real R>
inline R two_pi() {
  return boost::math::constants::two_pi<R>();
}

template <Real R>
inline R epsilon() {
  return std::numeric_limits<R>::epsilon();
}

template <Real R>
inline double to_double(const R& x) {
  return static_cast<double>(x);
}

template <Real To, Real From>
inline To real_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else {
    return static_cast<To>(x);
  }
}

namespace detail {

// Brings std:: and boost::multiprecision overloads into scope for ADL.
using std::abs;
using std::acosh;
using std::asin;
using std::asinh;
using std::atan2;
using std::cos;
using std::cosh;
using std::exp;
using std::expm1;
using std::log;
using std::log1p;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

}  // namespace detail

/// acosh(1 + t) for t >= 0, accurate when t is tiny.
template <Real R>
inline R acosh1p(const R& t) {
  using namespace detail;
  if (!(t > 0)) return R(0);
  return log1p(t + sqrt(t) * sqrt(t + 2));
}

/// Stable arccosh on [1, inf). Arguments below one (rounding) clamp to zero.
template <Real R>
inline R stable_acosh(const R& z) {
  return acosh1p(R(z - 1));
}

/// x / tanh(x), continuous at zero. tanh and sinh keep full relative
/// precision for tiny arguments, so only zero itself needs a branch.
template <Real R>
inline R x_coth_x(const R& x) {
  using namespace detail;
  if (x == 0) return R(1);
  return x / tanh(x);
}

/// sinh(x) / x, continuous at zero.
template <Real R>
inline R sinhc(const R& x) {
  using namespace detail;
  if (x == 0) return R(1);
  return sinh(x) / x;
}

}  // namespace hyperlab
