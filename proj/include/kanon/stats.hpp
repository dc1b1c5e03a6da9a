#pragma once

#include <span>

namespace kanon {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for fewer than 2 values
  std::size_t count = 0;
};

/// NaN entries are skipped.
MeanStd mean_std(std::span<const double> xs);

struct Correlation {
  double r = 0.0;
  double p = 1.0;
};

/// Sample Pearson r with a two-sided p-value from Student's t with n - 2
/// degrees of freedom. Requires n >= 3 and non-constant series.
Correlation pearson_correlation(std::span<const double> xs, std::span<const double> ys);

/// Trapezoidal area under y(x); xs must be non-decreasing.
double trapezoid_area(std::span<const double> xs, std::span<const double> ys);

}  // namespace kanon
