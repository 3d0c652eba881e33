#pragma once

// Noisy query games and their transparent variant.
//
// A game has n options, a query set, an observation space X of known volume
// and densities f_{q,i} on X bounded by c. In the transparent variant each
// answer is a point (x, y) drawn uniformly from the region under the graph of
// f_{q,i*}; the player discards every option whose graph does not contain
// (x, y), and the posterior over the survivors stays uniform.

#include "hyperlab/errors.hpp"
#include "hyperlab/oracle.hpp"
#include "hyperlab/parallel.hpp"
#include "hyperlab/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hyperlab {

template <class G>
concept QueryGame = requires(const G& g, const typename G::query_type& q, std::size_t i,
                             const typename G::observation_type& x, NoiseStream& s) {
  { g.option_count() } -> std::convertible_to<std::size_t>;
  { g.density(q, i, x) } -> std::convertible_to<double>;
  { g.sample(q, i, s) } -> std::same_as<typename G::observation_type>;
  { g.density_bound() } -> std::convertible_to<double>;
  { g.volume() } -> std::convertible_to<double>;
};

template <class Obs>
struct GraphSample {
  Obs x;
  double y;
};

/// (x, y) uniform under the graph of f_{q,i}: x ~ f_{q,i}, then y uniform on
/// [0, f_{q,i}(x)). A point mass has an unbounded graph; any positive height
/// stands in for it.
template <QueryGame G>
GraphSample<typename G::observation_type> sample_under_graph(
    const G& game, const typename G::query_type& q, std::size_t i, NoiseStream& s) {
  auto x = game.sample(q, i, s);
  const double f = game.density(q, i, x);
  if (!(f > 0.0)) throw InvariantViolation("observation drawn outside its own density's support");
  const double y = std::isinf(f) ? 1.0 : s.uniform01() * f;
  return {std::move(x), y};
}

template <QueryGame G>
struct TransparentState {
  std::vector<std::size_t> remaining;  ///< sorted option indices
  std::vector<std::pair<typename G::query_type, GraphSample<typename G::observation_type>>>
      history;

  std::size_t m() const { return remaining.size(); }
  bool contains(std::size_t i) const {
    return std::binary_search(remaining.begin(), remaining.end(), i);
  }
};

template <QueryGame G>
TransparentState<G> initial_state(const G& game) {
  TransparentState<G> st;
  st.remaining.resize(game.option_count());
  std::iota(st.remaining.begin(), st.remaining.end(), std::size_t{0});
  return st;
}

/// Keeps option i iff f_{q,i}(x) >= y. Ties stay.
template <QueryGame G>
void apply_update(TransparentState<G>& st, const typename G::query_type& q,
                  const GraphSample<typename G::observation_type>& obs, const G& game) {
  std::erase_if(st.remaining,
                [&](std::size_t i) { return !(game.density(q, i, obs.x) >= obs.y); });
  st.history.emplace_back(q, obs);
}

template <QueryGame G>
TransparentState<G> transparent_update(TransparentState<G> st, const typename G::query_type& q,
                                       const GraphSample<typename G::observation_type>& obs,
                                       const G& game) {
  apply_update(st, q, obs, game);
  return st;
}

template <class S, class G>
concept GameStrategy = QueryGame<G> && requires(S& s, const G& g, const TransparentState<G>& st,
                                                NoiseStream& rng) {
  { s.choose(g, st, rng) } -> std::convertible_to<typename G::query_type>;
};

struct Transcript {
  std::uint64_t seed = 0;
  std::size_t istar = 0;
  std::size_t guess = 0;  ///< not part of the text record
  std::size_t queries = 0;
  std::vector<std::size_t> m;  ///< m_0 = n, then one entry per query
  bool success = false;        ///< transparent win, or a correct final guess
};

/// One trial per line: `<seed> <queries> <m_0,m_1,...> <success>`.
inline std::string to_record(const Transcript& t) {
  std::ostringstream os;
  os << t.seed << ' ' << t.queries << ' ';
  for (std::size_t k = 0; k < t.m.size(); ++k) os << (k ? "," : "") << t.m[k];
  os << ' ' << (t.success ? 1 : 0);
  return os.str();
}

inline Transcript parse_record(const std::string& line) {
  std::istringstream is(line);
  Transcript t;
  std::string ms;
  int success = 0;
  if (!(is >> t.seed >> t.queries >> ms >> success) || (success != 0 && success != 1)) {
    throw std::invalid_argument("parse_record: malformed transcript line");
  }
  std::size_t pos = 0;
  while (pos <= ms.size()) {
    const std::size_t end = std::min(ms.find(',', pos), ms.size());
    std::size_t v = 0;
    const auto res = std::from_chars(ms.data() + pos, ms.data() + end, v);
    if (res.ec != std::errc{} || res.ptr != ms.data() + end) {
      throw std::invalid_argument("parse_record: malformed m sequence");
    }
    t.m.push_back(v);
    pos = end + 1;
  }
  t.success = success == 1;
  return t;
}

struct PlayOptions {
  std::size_t budget = 64;
  std::optional<std::size_t> istar;
};

/// Transparent play until one option survives or the budget runs out, then a
/// uniform guess among the survivors. Throws InvariantViolation if i* is
/// ever discarded.
template <QueryGame G, GameStrategy<G> S>
Transcript play(const G& game, S& strategy, std::uint64_t seed, const PlayOptions& opt = {}) {
  NoiseStream s(seed);
  Transcript t;
  t.seed = seed;
  t.istar = opt.istar ? *opt.istar : static_cast<std::size_t>(s.below(game.option_count()));
  auto st = initial_state(game);
  t.m.push_back(st.m());
  while (st.m() > 1 && t.queries < opt.budget) {
    const auto q = strategy.choose(game, st, s);
    const auto obs = sample_under_graph(game, q, t.istar, s);
    apply_update(st, q, obs, game);
    ++t.queries;
    t.m.push_back(st.m());
    if (!st.contains(t.istar)) throw InvariantViolation("transparent update discarded i*");
  }
  t.guess = st.m() == 1 ? st.remaining.front() : st.remaining[s.below(st.m())];
  t.success = t.guess == t.istar;
  return t;
}

struct PotentialStep {
  double mean;       ///< estimate of E[log m_{t-1} - log m_t]
  double stderr_;    ///< standard error of the mean
  double bound;      ///< log(c |X|)
  std::size_t trials;

  // the slack absorbs summation rounding when every trial drops by exactly the bound
  bool within_bound() const { return mean <= bound + 3.0 * stderr_ + 1e-12 * (1.0 + std::abs(bound)); }
};

/// Monte Carlo estimate of the per-step drop in log(remaining options) over
/// `steps` queries. Transcripts that reach a single survivor keep
/// contributing zero drops.
template <QueryGame G, GameStrategy<G> S>
std::vector<PotentialStep> potential_estimate(const G& game, const S& strategy,
                                              std::size_t trials, std::size_t steps,
                                              std::uint64_t seed,
                                              unsigned threads = default_threads()) {
  const auto drops = parallel_map(trials, threads, [&](std::size_t trial) {
    S local = strategy;
    NoiseStream s(derive_seed(seed, trial));
    const std::size_t istar = static_cast<std::size_t>(s.below(game.option_count()));
    auto st = initial_state(game);
    std::vector<double> out(steps, 0.0);
    for (std::size_t k = 0; k < steps && st.m() > 1; ++k) {
      const double before = std::log(static_cast<double>(st.m()));
      const auto q = local.choose(game, st, s);
      apply_update(st, q, sample_under_graph(game, q, istar, s), game);
      if (!st.contains(istar)) throw InvariantViolation("transparent update discarded i*");
      out[k] = before - std::log(static_cast<double>(st.m()));
    }
    return out;
  });
  const double bound = std::log(game.density_bound() * game.volume());
  std::vector<PotentialStep> res;
  std::vector<double> col(trials);
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t t = 0; t < trials; ++t) col[t] = drops[t][k];
    res.push_back({stats::mean(col), stats::standard_error(col), bound, trials});
  }
  return res;
}

/// log n / (3 log(c |X|)): fewer queries cannot win with probability 2/3.
inline double lower_bound_queries_log(double log_n, double c, double volX) {
  const double cv = c * volX;
  if (!(cv > 1.0)) throw DegenerateGame("lower bound needs c * |X| > 1");
  return log_n / (3.0 * std::log(cv));
}

inline double lower_bound_queries(std::uint64_t n, double c, double volX) {
  return lower_bound_queries_log(std::log(static_cast<double>(n)), c, volX);
}

/// Posterior over all options from the observations alone (the y heights
/// dropped), i.e. what a player of the ordinary game knows.
template <QueryGame G>
std::vector<double> opaque_posterior(const G& game, const TransparentState<G>& st) {
  const std::size_t n = game.option_count();
  std::vector<double> logw(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [q, obs] : st.history) {
      const double f = game.density(q, i, obs.x);
      logw[i] += f > 0.0 ? std::log(f) : -std::numeric_limits<double>::infinity();
    }
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) z += w[i] = std::exp(logw[i] - top);
  for (double& v : w) v /= z;
  return w;
}

struct InformationComparison {
  double transparent_win_rate;  ///< mean of 1 / m_T
  double opaque_win_rate;       ///< mean of the opaque MAP posterior mass
  double transparent_stderr;
  double opaque_stderr;
};

/// Plays matched trials (same i*, same x draws) and compares the optimal
/// win probability of a transparent player with that of a player who only
/// sees x. The strategy must not look at y.
template <QueryGame G, GameStrategy<G> S>
InformationComparison compare_information(const G& game, S strategy, std::size_t trials,
                                          std::size_t steps, std::uint64_t seed) {
  std::vector<double> tr, op;
  for (std::size_t t = 0; t < trials; ++t) {
    NoiseStream s(derive_seed(seed, t));
    const std::size_t istar = static_cast<std::size_t>(s.below(game.option_count()));
    auto st = initial_state(game);
    for (std::size_t k = 0; k < steps; ++k) {
      const auto q = strategy.choose(game, st, s);
      apply_update(st, q, sample_under_graph(game, q, istar, s), game);
    }
    tr.push_back(1.0 / static_cast<double>(st.m()));
    const auto post = opaque_posterior(game, st);
    op.push_back(*std::max_element(post.begin(), post.end()));
  }
  return {stats::mean(tr), stats::mean(op), stats::standard_error(tr),
          stats::standard_error(op)};
}

// ---------------------------------------------------------------------------
// Small reference games on the real line. Every query is the same query.

struct SingleQuery {
  template <class G>
  int choose(const G&, const TransparentState<G>&, NoiseStream&) {
    return 0;
  }
};

/// Option i is uniform on [i, i + 1) inside X = [0, n); c = 1, |X| = n.
class DisjointSupportGame {
 public:
  using query_type = int;
  using observation_type = double;

  explicit DisjointSupportGame(std::size_t n) : n_(n) {}

  std::size_t option_count() const { return n_; }
  double density(int, std::size_t i, double x) const {
    const double lo = static_cast<double>(i);
    return x >= lo && x < lo + 1.0 ? 1.0 : 0.0;
  }
  double sample(int, std::size_t i, NoiseStream& s) const {
    return static_cast<double>(i) + s.uniform01();
  }
  double density_bound() const { return 1.0; }
  double volume() const { return static_cast<double>(n_); }

 private:
  std::size_t n_;
};

/// Every option has the triangular density on [0, 2]; c = 1, |X| = 2.
class IdenticalGame {
 public:
  using query_type = int;
  using observation_type = double;

  explicit IdenticalGame(std::size_t n) : n_(n) {}

  std::size_t option_count() const { return n_; }
  double density(int, std::size_t, double x) const {
    return x >= 0.0 && x <= 2.0 ? 1.0 - std::abs(x - 1.0) : 0.0;
  }
  double sample(int, std::size_t, NoiseStream& s) const {
    return s.uniform01() + s.uniform01();
  }
  double density_bound() const { return 1.0; }
  double volume() const { return 2.0; }

 private:
  std::size_t n_;
};

/// Option k has density heights[k][j] on the unit cell [j, j + 1).
/// Each row must sum to one.
class PiecewiseGame {
 public:
  using query_type = int;
  using observation_type = double;

  explicit PiecewiseGame(std::vector<std::vector<double>> heights)
      : h_(std::move(heights)) {
    if (h_.empty()) throw std::invalid_argument("PiecewiseGame: no options");
    cells_ = h_.front().size();
    for (const auto& row : h_) {
      if (row.size() != cells_) throw std::invalid_argument("PiecewiseGame: ragged rows");
      double sum = 0.0;
      for (double v : row) {
        if (v < 0.0) throw std::invalid_argument("PiecewiseGame: negative density");
        sum += v;
        c_ = std::max(c_, v);
      }
      if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("PiecewiseGame: row mass != 1");
    }
  }

  std::size_t option_count() const { return h_.size(); }
  std::size_t cell_count() const { return cells_; }
  double density(int, std::size_t i, double x) const {
    if (!(x >= 0.0) || x >= static_cast<double>(cells_)) return 0.0;
    return h_[i][static_cast<std::size_t>(x)];
  }
  double sample(int, std::size_t i, NoiseStream& s) const {
    double u = s.uniform01();
    for (std::size_t j = 0; j < cells_; ++j) {
      if (u < h_[i][j] || j + 1 == cells_) {
        const double frac = h_[i][j] > 0.0 ? std::min(u / h_[i][j], std::nextafter(1.0, 0.0)) : 0.0;
        return static_cast<double>(j) + frac;
      }
      u -= h_[i][j];
    }
    return 0.0;
  }
  double density_bound() const { return c_; }
  double volume() const { return static_cast<double>(cells_); }

 private:
  std::vector<std::vector<double>> h_;
  std::size_t cells_ = 0;
  double c_ = 0.0;
};

/// Option 0 uniform on [0, 1), option 1 uniform on [1 - p, 2 - p).
class OverlapGame {
 public:
  using query_type = int;
  using observation_type = double;

  explicit OverlapGame(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("OverlapGame: p outside [0, 1]");
  }

  std::size_t option_count() const { return 2; }
  double density(int, std::size_t i, double x) const {
    const double lo = i == 0 ? 0.0 : 1.0 - p_;
    return x >= lo && x < lo + 1.0 ? 1.0 : 0.0;
  }
  double sample(int, std::size_t i, NoiseStream& s) const {
    return (i == 0 ? 0.0 : 1.0 - p_) + s.uniform01();
  }
  double density_bound() const { return 1.0; }
  double volume() const { return 2.0 - p_; }

 private:
  double p_;
};

}  // namespace hyperlab
