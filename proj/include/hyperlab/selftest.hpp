#pragma once

// Fast invariant checks for every module, run by `hyperlab selftest`.

#include "hyperlab/bounds.hpp"
#include "hyperlab/game.hpp"
#include "hyperlab/optim.hpp"
#include "hyperlab/reduction.hpp"

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace hyperlab {

struct SelfCheck {
  std::string name;
  bool passed;
  std::string detail;
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace detail

inline std::vector<SelfCheck> run_selftests(std::uint64_t seed) {
  std::vector<SelfCheck> out;
  auto check = [&](std::string name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
      auto [ok, detail] = body();
      out.push_back({std::move(name), ok, std::move(detail)});
    } catch (const std::exception& e) {
      out.push_back({std::move(name), false, std::string("threw: ") + e.what()});
    }
  };

  check("geometry: exp/log round trip", [&] {
    NoiseStream s(derive_seed(seed, 1));
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const auto x = HPoint<double>::polar(5.0 * s.uniform01(), 2.0 * M_PI * s.uniform01());
      const auto y = HPoint<double>::polar(5.0 * s.uniform01(), 2.0 * M_PI * s.uniform01());
      worst = std::max(worst, distance(exp_map(log_map(x, y)), y));
    }
    return std::pair{worst < 1e-8, detail::fmt("max error %.3g", worst)};
  });

  check("geometry: circumference at r = 1", [&] {
    const int m = 20000;
    double len = 0.0;
    for (int k = 0; k < m; ++k) {
      len += distance(HPoint<double>::polar(1.0, 2.0 * M_PI * k / m),
                      HPoint<double>::polar(1.0, 2.0 * M_PI * (k + 1) / m));
    }
    const double want = circle_measures(1.0).circumference;
    const double rel = std::abs(len - want) / want;
    return std::pair{rel < 1e-6, detail::fmt("polygon %.10f, relative gap %.3g", len, rel)};
  });

  check("gconvex: Hessian eigenvalues of dist^2", [&] {
    const double d = 1.0;
    const DistSqObjective<double> f(HPoint<double>::polar(d, 0.0));
    const auto x0 = HPoint<double>::origin();
    const double h = 1e-4;
    auto second = [&](double a, double b) {
      auto at = [&](double t) { return f.value(exp_map(from_frame(x0, t * a, t * b))); };
      return (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
    };
    const double radial = second(1.0, 0.0);
    const double tangential = second(0.0, 1.0);
    const bool ok = std::abs(radial - 2.0) < 1e-3 &&
                    std::abs(tangential - 2.0 * d / std::tanh(d)) < 1e-3;
    return std::pair{ok, detail::fmt("radial %.6f, tangential %.6f", radial, tangential)};
  });

  check("oracle: answers stay inside the observation space", [&] {
    const double r = 4.0;
    const NoiseModel noise = NoiseModel::uniform_box(0.5);
    NoisyOracle<double> o(DistSqObjective<double>(HPoint<double>::polar(r, 1.0)), noise,
                          derive_seed(seed, 2), r);
    const ObservationSpace space = observation_space(r, noise.precision());
    NoiseStream s(derive_seed(seed, 3));
    bool ok = true;
    for (int k = 0; k < 200; ++k) {
      const auto a = o.query(HPoint<double>::polar(2.0 * r * s.uniform01(), 6.0 * s.uniform01()));
      ok = ok && space.contains({a.fval, a.grad[0], a.grad[1]});
    }
    return std::pair{ok, std::string()};
  });

  check("optim: compass walk matches the law of cosines", [&] {
    const hp_real d(100), gamma(1e-8 * M_PI / 180);
    BearingErrorOracle<hp_real> o(DistSqObjective<hp_real>(HPoint<hp_real>::polar(d, hp_real(0))),
                                  gamma);
    const auto tr = compass_walk(o, HPoint<hp_real>::origin());
    const double got = tr.final_distance();
    const double want = to_double(third_side(d, d, gamma));
    return std::pair{std::abs(got - want) < 1e-6 * want, detail::fmt("%.9f vs %.9f", got, want)};
  });

  check("optim: rgd reaches r / 5", [&] {
    const double r = 10.0;
    NoisyOracle<double> o(DistSqObjective<double>(HPoint<double>::polar(r, 0.5)),
                          NoiseModel::uniform_box(1e-6), derive_seed(seed, 4), r);
    const auto tr = rgd(o, HPoint<double>::origin(), StepSize::smoothness(), {1000, r / 5.0});
    return std::pair{tr.queries_to_target.has_value(),
                     detail::fmt("%.0f queries", static_cast<double>(tr.query_count))};
  });

  check("game: transparent play never discards the truth", [&] {
    const OverlapGame g(0.5);
    SingleQuery q;
    std::size_t wins = 0;
    for (std::uint64_t t = 0; t < 500; ++t) wins += play(g, q, derive_seed(seed, 100 + t)).success;
    return std::pair{wins > 0, detail::fmt("%.0f of 500 won", static_cast<double>(wins))};
  });

  check("reduction: r = 8 packing is separated", [&] {
    const Packing p = pack_circle(8.0, 4.0);
    const auto rep = verify_separation(p);
    return std::pair{rep.ok && rep.exhaustive,
                     detail::fmt("n = %.0f, min distance %.9f", static_cast<double>(p.size()),
                                 rep.min_distance)};
  });

  check("bounds: last-step lemma at r = 50", [&] {
    const auto s = lemma_last_solve(50.0);
    const bool ok = std::abs(s.lhs - (-std::expm1(-2.0))) < 1e-4 &&
                    std::abs(s.c_side - 3.31) < 0.01 && s.residual < 1e-9;
    return std::pair{ok, detail::fmt("lhs %.6f, c %.6f", s.lhs, s.c_side)};
  });

  check("bounds: constructive ratio below the witness", [&] {
    bool ok = true;
    for (double r : {5.0, 10.0, 20.0, 50.0}) {
      const auto b = condition_ratio_lower(r);
      ok = ok && b.constructive <= b.witness;
    }
    return std::pair{ok, std::string()};
  });

  return out;
}

}  // namespace hyperlab
