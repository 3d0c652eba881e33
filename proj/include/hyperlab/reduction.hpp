#pragma once

// Candidate optima packed on the circle of radius r, and the noisy gradient
// oracle restated as a query game over them.

#include "hyperlab/errors.hpp"
#include "hyperlab/game.hpp"
#include "hyperlab/oracle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace hyperlab {

using big_uint = boost::multiprecision::cpp_int;

enum class PackingMethod {
  equal,   ///< n points at angles 2 pi k / n
  greedy,  ///< walk the circle placing a point every pitch theta
};

/// Points on the circle of radius r around the origin, pairwise at least
/// `min_sep` apart. Points are generated on demand; for large r the count
/// does not fit in 64 bits.
class Packing {
 public:
  Packing(double radius, double min_sep, hp_real pitch, big_uint count, PackingMethod method)
      : radius_(radius),
        min_sep_(min_sep),
        pitch_(std::move(pitch)),
        count_(std::move(count)),
        method_(method) {}

  double radius() const { return radius_; }
  double min_sep() const { return min_sep_; }
  PackingMethod method() const { return method_; }
  const big_uint& count() const { return count_; }
  const hp_real& pitch() const { return pitch_; }

  /// Angle between consecutive points.
  hp_real spacing() const {
    if (method_ == PackingMethod::greedy) return pitch_;
    return two_pi<hp_real>() / hp_real(count_);
  }

  std::optional<std::uint64_t> count_u64() const {
    if (count_ > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    return count_.convert_to<std::uint64_t>();
  }

  /// Number of points, for packings small enough to enumerate.
  std::size_t size() const {
    const auto n = count_u64();
    if (!n || *n > std::numeric_limits<std::size_t>::max() / 2) {
      throw std::length_error("Packing: too many points to enumerate");
    }
    return static_cast<std::size_t>(*n);
  }

  hp_real log_count() const {
    using namespace detail;
    return log(hp_real(count_));
  }

  template <Real R = double>
  HPoint<R> point(std::uint64_t i) const {
    const hp_real angle = spacing() * hp_real(i);
    return HPoint<R>::polar(R(radius_), real_cast<R>(angle));
  }

  std::vector<HPoint<double>> points() const {
    const std::size_t n = size();
    std::vector<HPoint<double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(point(i));
    return out;
  }

 private:
  double radius_;
  double min_sep_;
  hp_real pitch_;
  big_uint count_;
  PackingMethod method_;
};

/// Smallest angle theta between two points on the radius-r circle that are
/// `min_sep` apart: sinh^2 r (1 - cos theta) = cosh(min_sep) - 1, i.e.
/// sin(theta / 2) = sinh(min_sep / 2) / sinh r.
inline hp_real separation_angle(double r, double min_sep) {
  using namespace detail;
  if (!(r > 0.0) || !(min_sep > 0.0)) {
    throw std::invalid_argument("separation_angle: need r > 0 and min_sep > 0");
  }
  if (min_sep > 2.0 * r) throw InfeasiblePacking("min_sep exceeds the circle's diameter");
  hp_real s = sinh(hp_real(min_sep) / 2) / sinh(hp_real(r));
  if (s > 1) s = 1;
  return 2 * asin(s);
}

inline Packing pack_circle(double r, double min_sep,
                           PackingMethod method = PackingMethod::equal) {
  using namespace detail;
  const hp_real theta = separation_angle(r, min_sep);
  const hp_real ratio = two_pi<hp_real>() / theta;
  big_uint n = boost::multiprecision::floor(ratio).convert_to<big_uint>();
  if (n < 2) n = 2;
  return Packing(r, min_sep, theta, std::move(n), method);
}

struct SeparationReport {
  bool ok;
  double min_distance;
  bool exhaustive;
  std::uint64_t pairs_checked;
};

/// Exhaustive pairwise check for n <= exhaustive_limit. Otherwise the points
/// are rotations of each other, so the minimum is attained by a consecutive
/// pair, plus the closing gap for greedy packings. Those are measured in high
/// precision, together with `adjacent_samples` consecutive pairs spread round
/// the circle.
inline SeparationReport verify_separation(const Packing& p,
                                          std::uint64_t exhaustive_limit = 10000,
                                          std::uint64_t adjacent_samples = 64) {
  const double slack = p.min_sep() * (1.0 - 64 * std::numeric_limits<double>::epsilon());
  const auto n64 = p.count_u64();
  SeparationReport rep{true, std::numeric_limits<double>::infinity(), false, 0};
  auto take = [&](double d) {
    rep.min_distance = std::min(rep.min_distance, d);
    ++rep.pairs_checked;
  };
  if (n64 && *n64 <= exhaustive_limit) {
    const auto pts = p.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        double d = distance(pts[i], pts[j]);
        // pairs at the threshold are settled in high precision
        if (d < p.min_sep() * (1.0 + 1e-9)) {
          d = to_double(distance(p.point<hp_real>(i), p.point<hp_real>(j)));
        }
        take(d);
      }
    }
    rep.exhaustive = true;
  } else {
    take(to_double(distance(p.point<hp_real>(0), p.point<hp_real>(1))));
    if (p.method() == PackingMethod::greedy) {
      // last point back to the first
      const hp_real last = p.spacing() * hp_real(p.count() - 1);
      const auto a = HPoint<hp_real>::polar(hp_real(p.radius()), last);
      take(to_double(distance(a, HPoint<hp_real>::polar(hp_real(p.radius()), two_pi<hp_real>()))));
    }
    if (n64) {
      const std::uint64_t stride = std::max<std::uint64_t>(1, *n64 / adjacent_samples);
      for (std::uint64_t i = 0; i + 1 < *n64; i += stride) {
        take(to_double(distance(p.point<hp_real>(i), p.point<hp_real>(i + 1))));
      }
      take(to_double(distance(p.point<hp_real>(*n64 - 1), p.point<hp_real>(0))));
    }
  }
  rep.ok = rep.min_distance >= slack;
  return rep;
}

/// Explicit check of every consecutive pair, including the wrap-around. Only
/// for counts that fit in memory-free iteration (n <= 2^32).
inline SeparationReport verify_all_adjacent(const Packing& p) {
  const auto n64 = p.count_u64();
  if (!n64 || *n64 > (std::uint64_t{1} << 32)) {
    throw std::length_error("verify_all_adjacent: too many points");
  }
  const double slack = p.min_sep() * (1.0 - 64 * std::numeric_limits<double>::epsilon());
  SeparationReport rep{true, std::numeric_limits<double>::infinity(), false, 0};
  const double r = p.radius();
  const double step = to_double(p.spacing());
  HPoint<double> first = HPoint<double>::polar(r, 0.0);
  HPoint<double> prev = first;
  for (std::uint64_t i = 1; i <= *n64; ++i) {
    const HPoint<double> cur =
        i == *n64 ? first : HPoint<double>::polar(r, step * static_cast<double>(i));
    double d = distance(prev, cur);
    if (d < p.min_sep() * (1.0 + 1e-9)) {
      d = to_double(distance(p.point<hp_real>(i - 1), p.point<hp_real>(i == *n64 ? 0 : i)));
    }
    rep.min_distance = std::min(rep.min_distance, d);
    ++rep.pairs_checked;
    prev = cur;
  }
  rep.ok = rep.min_distance >= slack;
  return rep;
}

/// Index of the packing point within `radius` of y, if any. With
/// radius < min_sep / 2 the answer is unique.
inline std::optional<std::uint64_t> locate_option(const Packing& p, const HPoint<double>& y,
                                                  double radius) {
  const auto n64 = p.count_u64();
  if (!n64) throw std::length_error("locate_option: packing too large");
  const double step = to_double(p.spacing());
  double angle = std::atan2(y.x2(), y.x1());
  if (angle < 0) angle += 2.0 * M_PI;
  const auto guess = static_cast<std::uint64_t>(std::llround(angle / step));
  for (std::int64_t delta = -1; delta <= 1; ++delta) {
    const auto k = static_cast<std::uint64_t>(
        (static_cast<std::int64_t>(guess) + delta + static_cast<std::int64_t>(*n64)) %
        static_cast<std::int64_t>(*n64));
    if (distance(p.point(k), y) < radius) return k;
  }
  return std::nullopt;
}

struct PackingRecord {
  std::uint64_t index;
  double x0, x1, x2;
  double u, v;  ///< Poincare disk chart
};

inline std::vector<PackingRecord> packing_records(const Packing& p, std::size_t limit) {
  std::vector<PackingRecord> out;
  const std::size_t n = std::min(limit, p.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = p.point(i);
    const auto uv = to_poincare(x);
    out.push_back({i, x.x0(), x.x1(), x.x2(), uv[0], uv[1]});
  }
  return out;
}

using Observation3 = std::array<double, 3>;

/// Options are the packing points; a query at q observes the exact
/// (value, gradient) of dist(., p_i)^2 at q plus noise. Answers at the origin
/// are tabulated once, since every strategy starts there.
class ReductionGame {
 public:
  using query_type = HPoint<double>;
  using observation_type = Observation3;

  ReductionGame(const Packing& packing, NoiseModel noise, double r)
      : noise_(noise), r_(r), space_(observation_space(r, noise.precision())) {
    points_ = packing.points();
    origin_truth_.reserve(points_.size());
    for (const auto& p : points_) origin_truth_.push_back(compute_truth(query_type::origin(), p));
  }

  std::size_t option_count() const { return points_.size(); }
  const HPoint<double>& option(std::size_t i) const { return points_[i]; }
  const NoiseModel& noise() const { return noise_; }
  double radius() const { return r_; }
  const ObservationSpace& space() const { return space_; }

  Observation3 truth(const query_type& q, std::size_t i) const {
    if (q == query_type::origin()) return origin_truth_[i];
    return compute_truth(q, points_[i]);
  }

  double density(const query_type& q, std::size_t i, const Observation3& x) const {
    const auto t = truth(q, i);
    return noise_.pdf({x[0] - t[0], x[1] - t[1], x[2] - t[2]});
  }

  /// Rejection keeps the drawn observation inside the support as recomputed
  /// by `density`, which rounding in t + z could otherwise break.
  Observation3 sample(const query_type& q, std::size_t i, NoiseStream& s) const {
    if (distance(query_type::origin(), q) > kQueryReach * r_) {
      throw QueryOutOfRange("query point lies beyond the allowed query region");
    }
    const auto t = truth(q, i);
    for (;;) {
      const auto z = noise_.sample(s);
      const Observation3 x{t[0] + z[0], t[1] + z[1], t[2] + z[2]};
      if (noise_.precision() == 0.0 || density(q, i, x) > 0.0) return x;
    }
  }

  double density_bound() const { return noise_.c(); }
  double volume() const { return space_.volume; }

 private:
  static Observation3 compute_truth(const query_type& q, const HPoint<double>& p) {
    const auto v = log_map(q, p);
    const double d = v.norm();
    const auto g = frame_coords(v);
    return {d * d, -2.0 * g[0], -2.0 * g[1]};
  }

  NoiseModel noise_;
  double r_;
  ObservationSpace space_;
  std::vector<HPoint<double>> points_;
  std::vector<Observation3> origin_truth_;
};

inline ReductionGame build_game(const Packing& packing, NoiseModel noise, double r) {
  return ReductionGame(packing, noise, r);
}

/// Polar grid of geodesic pitch `pitch` filling the disk of radius `radius`:
/// the origin, then rings at multiples of the pitch, each split into arcs of
/// length about `pitch`. Points are generated on demand.
class QueryMenu {
 public:
  QueryMenu(double radius, double pitch) {
    if (!(radius > 0.0) || !(pitch > 0.0)) {
      throw std::invalid_argument("QueryMenu: radius and pitch must be positive");
    }
    offsets_.push_back(1);  // index 0 is the origin
    for (double rho = pitch; rho <= radius + 1e-12; rho += pitch) {
      const double circ = 2.0 * M_PI * std::sinh(rho);
      const auto k = static_cast<std::uint64_t>(std::max(6.0, std::ceil(circ / pitch)));
      rings_.push_back({rho, k});
      offsets_.push_back(offsets_.back() + k);
    }
  }

  std::uint64_t size() const { return offsets_.back(); }

  HPoint<double> operator[](std::uint64_t idx) const {
    if (idx >= size()) throw std::out_of_range("QueryMenu: index out of range");
    if (idx == 0) return HPoint<double>::origin();
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
    const std::size_t ring = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    const std::uint64_t j = idx - offsets_[ring];
    const auto& [rho, k] = rings_[ring];
    return HPoint<double>::polar(rho, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(k));
  }

 private:
  struct Ring {
    double rho;
    std::uint64_t count;
  };
  std::vector<Ring> rings_;
  std::vector<std::uint64_t> offsets_;
};

/// Uniform choice from a fixed menu, ignoring what has been seen.
class RandomMenuStrategy {
 public:
  explicit RandomMenuStrategy(QueryMenu menu) : menu_(std::move(menu)) {}
  static RandomMenuStrategy for_radius(double r) { return RandomMenuStrategy(QueryMenu(r, r / 50.0)); }

  HPoint<double> choose(const ReductionGame&, const TransparentState<ReductionGame>&,
                        NoiseStream& s) {
    return menu_[s.below(menu_.size())];
  }

  std::uint64_t menu_size() const { return menu_.size(); }

 private:
  QueryMenu menu_;
};

/// First query at the origin. Afterwards every survivor is equally likely,
/// so query at the survivor closest to the optimum implied by the last
/// answer, exp_q(-g / 2).
class MaxLikelihoodStrategy {
 public:
  HPoint<double> choose(const ReductionGame& game, const TransparentState<ReductionGame>& st,
                        NoiseStream&) {
    if (st.history.empty()) return HPoint<double>::origin();
    const auto& [q, obs] = st.history.back();
    const HPoint<double> guess = exp_map(from_frame(q, -obs.x[1] / 2.0, -obs.x[2] / 2.0));
    std::size_t best = st.remaining.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i : st.remaining) {
      const double d = distance(game.option(i), guess);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return game.option(best);
  }
};

}  // namespace hyperlab
