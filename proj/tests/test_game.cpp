#include "hyperlab/game.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace hyperlab;

TEST(Transcript, RecordRoundTrip) {
  Transcript t;
  t.seed = 17;
  t.queries = 2;
  t.m = {8, 3, 1};
  t.success = true;
  EXPECT_EQ(to_record(t), "17 2 8,3,1 1");
  const Transcript back = parse_record(to_record(t));
  EXPECT_EQ(back.seed, 17u);
  EXPECT_EQ(back.queries, 2u);
  EXPECT_EQ(back.m, t.m);
  EXPECT_TRUE(back.success);
}

TEST(Transcript, MalformedRecordsThrow) {
  EXPECT_THROW(parse_record("1 2"), std::invalid_argument);
  EXPECT_THROW(parse_record("1 2 8,x 1"), std::invalid_argument);
  EXPECT_THROW(parse_record("1 2 8,3 7"), std::invalid_argument);
  EXPECT_THROW(parse_record("1 2 8,,3 1"), std::invalid_argument);
}

TEST(DisjointSupport, OneQueryAlwaysWins) {
  const DisjointSupportGame g(16);
  SingleQuery q;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto t = play(g, q, seed);
    EXPECT_TRUE(t.success);
    EXPECT_EQ(t.queries, 1u);
    EXPECT_EQ(t.m, (std::vector<std::size_t>{16, 1}));
  }
}

TEST(IdenticalGame, NothingIsEverLearned) {
  const IdenticalGame g(5);
  SingleQuery q;
  const auto t = play(g, q, 3, {10, std::nullopt});
  EXPECT_EQ(t.queries, 10u);
  for (std::size_t m : t.m) EXPECT_EQ(m, 5u);
}

TEST(PointMass, GraphSampleHeightIsPositive) {
  // Degenerate density: the observation is exact and the graph is unbounded.
  struct Exact {
    using query_type = int;
    using observation_type = double;
    std::size_t option_count() const { return 4; }
    double density(int, std::size_t i, double x) const {
      return x == static_cast<double>(i) ? std::numeric_limits<double>::infinity() : 0.0;
    }
    double sample(int, std::size_t i, NoiseStream&) const { return static_cast<double>(i); }
    double density_bound() const { return std::numeric_limits<double>::infinity(); }
    double volume() const { return 4.0; }
  };
  const Exact g;
  NoiseStream s(1);
  const auto obs = sample_under_graph(g, 0, 2, s);
  EXPECT_EQ(obs.x, 2.0);
  EXPECT_GT(obs.y, 0.0);
  SingleQuery q;
  const auto t = play(g, q, 9);
  EXPECT_TRUE(t.success);
  EXPECT_EQ(t.queries, 1u);
}

TEST(TransparentUpdate, KeepsExactlyTheGraphsContainingTheSample) {
  const PiecewiseGame g({{0.7, 0.3}, {0.5, 0.5}, {0.2, 0.8}});
  auto st = initial_state(g);
  st = transparent_update(st, 0, GraphSample<double>{0.5, 0.4}, g);
  EXPECT_EQ(st.remaining, (std::vector<std::size_t>{0, 1}));
  st = transparent_update(st, 0, GraphSample<double>{1.5, 0.35}, g);
  EXPECT_EQ(st.remaining, (std::vector<std::size_t>{1}));
  EXPECT_EQ(st.history.size(), 2u);
}

TEST(TransparentUpdate, TiesAreKept) {
  const PiecewiseGame g({{0.5, 0.5}, {0.25, 0.75}});
  auto st = transparent_update(initial_state(g), 0, GraphSample<double>{0.2, 0.25}, g);
  EXPECT_EQ(st.m(), 2u);
}

TEST(Play, DetectsUnsoundDensities) {
  // sample() draws outside the support that density() reports.
  struct Broken {
    using query_type = int;
    using observation_type = double;
    std::size_t option_count() const { return 2; }
    double density(int, std::size_t i, double x) const { return (x < 1.0) == (i == 0) ? 1.0 : 0.0; }
    double sample(int, std::size_t i, NoiseStream& s) const { return (i == 0 ? 1.0 : 0.0) + s.uniform01(); }
    double density_bound() const { return 1.0; }
    double volume() const { return 2.0; }
  };
  const Broken g;
  SingleQuery q;
  EXPECT_THROW(play(g, q, 1), InvariantViolation);
}

TEST(Posterior, UniformOverSurvivors) {
  // Conditioned on the surviving set, the truth should be uniform on it.
  const PiecewiseGame g({{0.7, 0.3}, {0.5, 0.5}, {0.2, 0.8}});
  std::map<std::vector<std::size_t>, std::vector<double>> tally;
  for (std::uint64_t t = 0; t < 60000; ++t) {
    NoiseStream s(derive_seed(77, t));
    const std::size_t istar = s.below(3);
    auto st = initial_state(g);
    apply_update(st, 0, sample_under_graph(g, 0, istar, s), g);
    auto& row = tally[st.remaining];
    row.resize(3, 0.0);
    row[istar] += 1.0;
  }
  int tested = 0;
  for (const auto& [survivors, counts] : tally) {
    if (survivors.size() < 2) continue;
    std::vector<double> obs, expected;
    double total = 0.0;
    for (std::size_t i : survivors) total += counts[i];
    if (total < 500) continue;
    for (std::size_t i : survivors) {
      obs.push_back(counts[i]);
      expected.push_back(total / survivors.size());
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (std::find(survivors.begin(), survivors.end(), i) == survivors.end()) EXPECT_EQ(counts[i], 0.0);
    }
    EXPECT_GT(oracle::chi_squared_p(obs, expected), 1e-4);
    ++tested;
  }
  EXPECT_GE(tested, 2);
}

TEST(Potential, DisjointAchievesEquality) {
  const DisjointSupportGame g(32);
  const auto steps = potential_estimate(g, SingleQuery{}, 2000, 3, 5, 2);
  EXPECT_NEAR(steps[0].mean, std::log(32.0), 1e-12);
  EXPECT_DOUBLE_EQ(steps[0].bound, std::log(32.0));
  EXPECT_TRUE(steps[0].within_bound());
  EXPECT_EQ(steps[1].mean, 0.0);
}

TEST(Potential, IdenticalAchievesZero) {
  const IdenticalGame g(32);
  const auto steps = potential_estimate(g, SingleQuery{}, 500, 4, 5, 2);
  for (const auto& s : steps) {
    EXPECT_EQ(s.mean, 0.0);
    EXPECT_NEAR(s.bound, std::log(2.0), 1e-15);
  }
}

TEST(Potential, OverlapMatchesClosedForm) {
  for (double p : {0.0, 0.3, 0.8}) {
    const OverlapGame g(p);
    const auto steps = potential_estimate(g, SingleQuery{}, 20000, 1, 6, 2);
    EXPECT_NEAR(steps[0].mean, oracle::overlap_expected_drop(p), 4.0 * steps[0].stderr_ + 1e-12);
    EXPECT_TRUE(steps[0].within_bound());
  }
}

TEST(Potential, PiecewiseStaysUnderBound) {
  const PiecewiseGame g({{0.1, 0.2, 0.3, 0.4}, {0.4, 0.3, 0.2, 0.1}, {0.25, 0.25, 0.25, 0.25},
                         {0.0, 0.5, 0.5, 0.0}});
  const auto steps = potential_estimate(g, SingleQuery{}, 10000, 5, 8, 2);
  for (const auto& s : steps) EXPECT_TRUE(s.within_bound()) << s.mean << " vs " << s.bound;
}

TEST(LowerBound, FormulaAndDegenerateCase) {
  EXPECT_NEAR(lower_bound_queries(1000, 1.0, 10.0), std::log(1000.0) / (3.0 * std::log(10.0)), 1e-15);
  EXPECT_THROW(lower_bound_queries(10, 0.5, 2.0), DegenerateGame);
  EXPECT_THROW(lower_bound_queries(10, 0.1, 2.0), DegenerateGame);
}

TEST(LowerBound, DisjointGameWinsAfterOneQuery) {
  // log n / (3 log n) = 1/3 <= 1 query.
  EXPECT_LE(lower_bound_queries(64, 1.0, 64.0), 1.0);
}

TEST(Information, TransparentPlayerKnowsAtLeastAsMuch) {
  const PiecewiseGame g({{0.6, 0.4}, {0.4, 0.6}, {0.5, 0.5}});
  const auto cmp = compare_information(g, SingleQuery{}, 20000, 3, 12);
  EXPECT_GE(cmp.transparent_win_rate + 3 * cmp.transparent_stderr,
            cmp.opaque_win_rate - 3 * cmp.opaque_stderr);
  EXPECT_GT(cmp.opaque_win_rate, 1.0 / 3.0);
}

TEST(Information, OpaquePosteriorIsNormalised) {
  const PiecewiseGame g({{0.6, 0.4}, {0.4, 0.6}});
  auto st = transparent_update(initial_state(g), 0, GraphSample<double>{0.5, 0.1}, g);
  const auto post = opaque_posterior(g, st);
  EXPECT_NEAR(post[0], 0.6, 1e-12);
  EXPECT_NEAR(post[1], 0.4, 1e-12);
}

TEST(PiecewiseGame, RejectsInvalidRows) {
  EXPECT_THROW(PiecewiseGame({{0.5, 0.6}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseGame({{0.5, 0.5}, {1.0}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseGame({{1.5, -0.5}}), std::invalid_argument);
  EXPECT_THROW(OverlapGame(1.5), std::invalid_argument);
}

TEST(PiecewiseGame, SamplesFollowDensity) {
  const PiecewiseGame g({{0.1, 0.6, 0.3}});
  NoiseStream s(2);
  std::vector<double> counts(3, 0.0);
  for (int k = 0; k < 30000; ++k) counts[static_cast<std::size_t>(g.sample(0, 0, s))] += 1.0;
  EXPECT_GT(oracle::chi_squared_p(counts, {3000.0, 18000.0, 9000.0}), 1e-4);
}
