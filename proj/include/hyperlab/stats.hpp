#pragma once

// Small descriptive statistics used by the experiment drivers.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace hyperlab::stats {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Standard error of the mean (sample standard deviation / sqrt(n)).
inline double standard_error(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};

/// Ordinary least squares y = slope * x + intercept.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("linear_fit needs two or more paired points");
  }
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, my - slope * mx, r2};
}

/// Exponent p of y ~ x^p from a least-squares fit in log-log space.
inline LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_fit(lx, ly);
}

}  // namespace hyperlab::stats
