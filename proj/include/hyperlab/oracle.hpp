#pragma once

// Noisy first-order oracle for the radius-r model: queries within 1000 r of
// the origin return f(x) + z1 and grad f(x) + z2, where the gradient is
// expressed in the Gram-Schmidt frame at x and (z1, z2) is a fresh draw from
// a bounded, bounded-density noise model.

#include "hyperlab/gconvex.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace hyperlab {

/// Query points may lie at most kQueryReach * r from the origin.
inline constexpr double kQueryReach = 1000.0;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the index-th independent stream derived from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Seeded random stream. Identical seeds give identical sequences.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n), n > 0. Rejection keeps it unbiased and
  /// independent of the standard library's distribution implementation.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

enum class NoiseKind { uniform_box, truncated_gaussian };

inline std::string to_string(NoiseKind k) {
  return k == NoiseKind::uniform_box ? "uniform" : "gaussian";
}

/// Additive noise on the 3-vector (value, grad_1, grad_2). Each coordinate
/// is independent and supported on [-C, C]; `c()` bounds the joint density.
class NoiseModel {
 public:
  static NoiseModel uniform_box(double C) { return NoiseModel(NoiseKind::uniform_box, C); }
  static NoiseModel truncated_gaussian(double C) {
    return NoiseModel(NoiseKind::truncated_gaussian, C);
  }
  static NoiseModel none() { return NoiseModel(NoiseKind::uniform_box, 0.0); }

  NoiseKind kind() const { return kind_; }
  double precision() const { return C_; }
  double sigma() const { return C_ / 4.0; }

  /// Joint density bound. Infinite for the degenerate C = 0 model.
  double c() const {
    if (C_ == 0.0) return std::numeric_limits<double>::infinity();
    const double m = pdf1(0.0);
    return m * m * m;
  }

  double pdf1(double z) const {
    if (C_ == 0.0) return z == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    if (std::abs(z) > C_) return 0.0;
    if (kind_ == NoiseKind::uniform_box) return 1.0 / (2.0 * C_);
    const double s = sigma();
    const double mass = std::erf(C_ / (s * std::sqrt(2.0)));
    return std::exp(-0.5 * (z / s) * (z / s)) / (s * std::sqrt(2.0 * M_PI) * mass);
  }

  double pdf(const std::array<double, 3>& z) const {
    const double a = pdf1(z[0]);
    if (a == 0.0) return 0.0;
    const double b = pdf1(z[1]);
    if (b == 0.0) return 0.0;
    return a * b * pdf1(z[2]);
  }

  double sample1(NoiseStream& s) const {
    if (C_ == 0.0) return 0.0;
    if (kind_ == NoiseKind::uniform_box) return s.uniform(-C_, C_);
    for (;;) {
      const double z = sigma() * s.normal();
      if (std::abs(z) <= C_) return z;
    }
  }

  std::array<double, 3> sample(NoiseStream& s) const {
    const double a = sample1(s);
    const double b = sample1(s);
    return {a, b, sample1(s)};
  }

 private:
  NoiseModel(NoiseKind kind, double C) : kind_(kind), C_(C) {
    if (!(C >= 0.0) || !std::isfinite(C)) {
      throw std::invalid_argument("NoiseModel: precision C must be finite and >= 0");
    }
  }

  NoiseKind kind_;
  double C_;
};

template <Real R>
struct OracleAnswer {
  R fval;
  std::array<R, 2> grad;  ///< coordinates in tangent_frame(x)
};

struct QueryOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

template <Real R>
OracleAnswer<R> exact_answer(const DistSqObjective<R>& obj, const HPoint<R>& x) {
  return {obj.value(x), frame_coords(obj.grad(x))};
}

/// One noisy answer. `r` is the model's radius bound.
template <Real R>
OracleAnswer<R> query(const DistSqObjective<R>& obj, const HPoint<R>& x,
                      const NoiseModel& noise, NoiseStream& stream, double r) {
  if (distance(HPoint<R>::origin(), x) > R(kQueryReach * r)) {
    throw QueryOutOfRange("query point lies beyond the allowed query region");
  }
  auto ans = exact_answer(obj, x);
  const auto z = noise.sample(stream);
  ans.fval += R(z[0]);
  ans.grad[0] += R(z[1]);
  ans.grad[1] += R(z[2]);
  return ans;
}

/// Stateful oracle owning its stream and a call counter.
template <Real R>
class NoisyOracle {
 public:
  NoisyOracle(DistSqObjective<R> obj, NoiseModel noise, std::uint64_t seed, double r)
      : obj_(std::move(obj)), noise_(noise), stream_(seed), r_(r) {}

  OracleAnswer<R> query(const HPoint<R>& x) {
    ++calls_;
    return hyperlab::query(obj_, x, noise_, stream_, r_);
  }

  std::size_t calls() const { return calls_; }
  double precision() const { return noise_.precision(); }
  const DistSqObjective<R>& objective() const { return obj_; }

 private:
  DistSqObjective<R> obj_;
  NoiseModel noise_;
  NoiseStream stream_;
  double r_;
  std::size_t calls_ = 0;
};

/// Exact value, exact gradient magnitude, gradient direction rotated by a
/// fixed bearing error. A compass that is off by `gamma` radians.
template <Real R>
class BearingErrorOracle {
 public:
  BearingErrorOracle(DistSqObjective<R> obj, R gamma)
      : obj_(std::move(obj)), gamma_(std::move(gamma)) {}

  OracleAnswer<R> query(const HPoint<R>& x) {
    using namespace detail;
    ++calls_;
    auto ans = exact_answer(obj_, x);
    const R c = cos(gamma_);
    const R s = sin(gamma_);
    const R g0 = ans.grad[0];
    const R g1 = ans.grad[1];
    ans.grad = {c * g0 - s * g1, s * g0 + c * g1};
    return ans;
  }

  std::size_t calls() const { return calls_; }
  double precision() const { return 0.0; }
  const DistSqObjective<R>& objective() const { return obj_; }

 private:
  DistSqObjective<R> obj_;
  R gamma_;
  std::size_t calls_ = 0;
};

template <class O, class R>
concept GradientOracle = requires(O& o, const HPoint<R>& x) {
  { o.query(x) } -> std::same_as<OracleAnswer<R>>;
  { o.calls() } -> std::convertible_to<std::size_t>;
  { o.precision() } -> std::convertible_to<double>;
};

/// Box holding every possible noisy answer for queries in the allowed region:
/// value in [-C, f_max + C], gradient in the disk of radius g_max + C.
struct ObservationSpace {
  double value_lo;
  double value_hi;
  double grad_radius;
  double volume;

  bool contains(const std::array<double, 3>& obs) const {
    return obs[0] >= value_lo && obs[0] <= value_hi &&
           std::hypot(obs[1], obs[2]) <= grad_radius;
  }
};

inline ObservationSpace observation_space(double r, double C) {
  if (!(r > 0.0) || !(C >= 0.0)) {
    throw std::invalid_argument("observation_space: need r > 0 and C >= 0");
  }
  const double reach = kQueryReach * r + r;
  const double f_max = reach * reach;
  const double g_max = 2.0 * reach;
  const double g = g_max + C;
  return {-C, f_max + C, g, (f_max + 2.0 * C) * M_PI * g * g};
}

/// volume <= kVolumeEnvelope * r^4 * C^3 whenever r >= 1 and C >= 1.
inline constexpr double kVolumeEnvelope =
    M_PI * ((kQueryReach + 1) * (kQueryReach + 1) + 2.0) *
    (2.0 * (kQueryReach + 1) + 1.0) * (2.0 * (kQueryReach + 1) + 1.0);

}  // namespace hyperlab
