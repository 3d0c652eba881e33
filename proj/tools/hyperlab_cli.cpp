// Command-line experiment runner.
//
//   hyperlab <experiment> [options]
//
// Exit status: 0 ok, 2 bad configuration, 3 invariant failure, 1 anything else.

#include "hyperlab/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << body;
  if (!f) throw std::runtime_error("failed writing " + path);
}

void export_points(const hyperlab::ExperimentConfig& cfg) {
  std::string s = "r,index,x0,x1,x2,u,v\n";
  for (double r : cfg.r) {
    const auto method = cfg.packing == "greedy" ? hyperlab::PackingMethod::greedy
                                                : hyperlab::PackingMethod::equal;
    const auto p = hyperlab::pack_circle(r, cfg.min_sep ? *cfg.min_sep : r / 2.0, method);
    const auto n = p.count_u64();
    const std::size_t limit = n ? std::min<std::uint64_t>(*n, cfg.export_points) : cfg.export_points;
    for (std::size_t i = 0; i < limit; ++i) {
      const auto x = p.point(i);
      const auto uv = hyperlab::to_poincare(x);
      using hyperlab::format_number;
      s += format_number(r) + ',' + std::to_string(i) + ',' + format_number(x.x0()) + ',' +
           format_number(x.x1()) + ',' + format_number(x.x2()) + ',' + format_number(uv[0]) +
           ',' + format_number(uv[1]) + '\n';
    }
  }
  write_file(cfg.out + ".points.csv", s);
}

}  // namespace

int main(int argc, char** argv) {
  hyperlab::ExperimentConfig cfg;
  CLI::App app{"Noisy first-order optimisation on the hyperbolic plane: experiment runner"};
  app.option_defaults()->always_capture_default();

  std::string positional;
  app.add_option("name", positional, "Experiment to run")
      ->check(CLI::IsMember(hyperlab::experiment_names()));
  app.add_option("--experiment", cfg.experiment, "Experiment to run")
      ->check(CLI::IsMember(hyperlab::experiment_names()));
  app.add_option("--r", cfg.r, "Radius (or list of radii)")->delimiter(',');
  app.add_option("--noise-C", cfg.noise_C, "Noise precision C (default 0.1)");
  app.add_option("--noise-c", cfg.noise_c, "Noise density bound c; implies C when C is not given");
  app.add_option("--noise-kind", cfg.noise_kind, "uniform | gaussian");
  app.add_option("--trials", cfg.trials, "Trials per radius");
  app.add_option("--seed", cfg.seed, "Base seed; trial t uses seed + t")->envname("HYPERLAB_SEED");
  app.add_option("--out", cfg.out, "Output prefix: writes <out>.csv and <out>.json");
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_option("--distance", cfg.distance, "pirate: distance to the target");
  app.add_option("--error-deg", cfg.error_deg, "pirate: bearing errors in degrees")->delimiter(',');
  app.add_option("--error-rad", cfg.error_rad, "pirate: bearing errors in radians")->delimiter(',');
  app.add_option("--strategy", cfg.strategy, "game: ml | random");
  app.add_option("--budget", cfg.budget, "game: query budget per trial");
  app.add_option("--potential-steps", cfg.potential_steps, "game: also estimate the potential drop");
  app.add_option("--method", cfg.method, "optimize: rgd | momentum | agd | compass");
  app.add_option("--momentum", cfg.momentum, "optimize: momentum coefficient");
  app.add_option("--target-fraction", cfg.target_fraction, "optimize: success radius / r");
  app.add_option("--max-queries", cfg.max_queries, "optimize: query budget per trial");
  app.add_option("--min-sep", cfg.min_sep, "pack, game: separation (default r/2)");
  app.add_option("--packing", cfg.packing, "pack: equal | greedy");
  app.add_option("--export-points", cfg.export_points, "pack: write up to this many points");
  bool csv_stdout = false;
  app.add_flag("--csv-stdout", csv_stdout, "Print the CSV to standard output");

  bool errors_given = false;
  try {
    app.parse(argc, argv);
    errors_given = app.count("--error-deg") + app.count("--error-rad") > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (!positional.empty()) {
    if (app.count("--experiment") && positional != cfg.experiment) {
      std::cerr << "error: experiment given twice with different names\n";
      return kExitConfig;
    }
    cfg.experiment = positional;
  } else if (!app.count("--experiment")) {
    std::cerr << "error: no experiment given\n" << app.help();
    return kExitConfig;
  }
  if (errors_given) {
    if (!app.count("--error-deg")) cfg.error_deg.clear();
    if (!app.count("--error-rad")) cfg.error_rad.clear();
  }

  try {
    const auto res = hyperlab::run_experiment(cfg);
    std::cout << res.report;
    const std::string csv = hyperlab::to_csv(res.rows);
    if (csv_stdout) std::cout << csv;
    if (!cfg.out.empty()) {
      write_file(cfg.out + ".csv", csv);
      write_file(cfg.out + ".json", res.summary.dump(2) + "\n");
      if (cfg.experiment == "pack" && cfg.export_points > 0) export_points(cfg);
    }
    std::cout << "config hash " << res.summary["config_hash"].get<std::string>() << '\n';
    if (!res.invariants_ok) {
      std::cerr << "error: invariant check failed\n";
      return kExitInvariant;
    }
    return 0;
  } catch (const hyperlab::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
