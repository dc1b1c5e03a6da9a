#include "kanon/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>

#include "kanon/graph.hpp"

namespace kanon {

MeanStd mean_std(std::span<const double> xs) {
  MeanStd out;
  double sum = 0.0;
  for (double x : xs) {
    if (std::isnan(x)) continue;
    sum += x;
    ++out.count;
  }
  if (out.count == 0) {
    out.mean = std::nan("");
    return out;
  }
  out.mean = sum / static_cast<double>(out.count);
  if (out.count < 2) return out;
  double ss = 0.0;
  for (double x : xs) {
    if (!std::isnan(x)) ss += (x - out.mean) * (x - out.mean);
  }
  out.std = std::sqrt(ss / static_cast<double>(out.count - 1));
  return out;
}

Correlation pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("pearson: series lengths differ");
  const std::size_t n = xs.size();
  if (n < 3) throw Error("pearson: need at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw Error("pearson: correlation undefined for a constant series");
  Correlation c;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = static_cast<double>(n - 2);
  if (std::abs(c.r) >= 1.0) {
    c.p = 0.0;
    return c;
  }
  const double t = c.r * std::sqrt(dof / (1.0 - c.r * c.r));
  boost::math::students_t dist(dof);
  c.p = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
  return c;
}

double trapezoid_area(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("trapezoid: series lengths differ");
  double a = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) a += (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]) / 2.0;
  return a;
}

}  // namespace kanon
