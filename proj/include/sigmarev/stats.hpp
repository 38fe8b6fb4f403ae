#pragma once

#include <span>
#include <vector>

#include "sigmarev/date.hpp"
#include "sigmarev/returns.hpp"

namespace sigmarev {

/// Sample moments with the n−1 denominator.
struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
};

/// Z_n = (x − mean) / (sigma / sqrt(n)), sigma the sample standard deviation.
struct StandardScore {
  double value = 0.0;
  double x = 0.0;
  double mean = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
};

struct AlignedReturns {
  std::vector<Date> dates;
  std::vector<double> a;
  std::vector<double> b;
};

double mean(std::span<const double> xs);
/// InsufficientData for n < 2.
SampleStats sample_stats(std::span<const double> xs);
/// LengthMismatch, InsufficientData.
double covariance(std::span<const double> xs, std::span<const double> ys);
/// Pearson correlation. ZeroVariance when either sample is constant.
double correlation(std::span<const double> xs, std::span<const double> ys);
/// ZeroVariance, InsufficientData.
StandardScore standard_score(double x, std::span<const double> xs);
/// Inner join on date. NoOverlap when the intersection is empty.
AlignedReturns align_by_date(const ReturnSeries& a, const ReturnSeries& b);

}  // namespace sigmarev
