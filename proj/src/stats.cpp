#include "sigmarev/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigmarev/error.hpp"
#include "sigmarev/kernels.hpp"

namespace sigmarev {
namespace {

void require_pairs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + " values");
  if (xs.size() < 2) throw Error(ErrorCode::InsufficientData, "need at least 2 paired values");
}

// Overshoot past ±1 larger than this is a bug, not rounding.
constexpr double kClampSlack = 1e-12;

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::InsufficientData, "mean of an empty sample");
  return kernels::sum(xs) / static_cast<double>(xs.size());
}

SampleStats sample_stats(std::span<const double> xs) {
  if (xs.size() < 2)
    throw Error(ErrorCode::InsufficientData,
                "variance needs at least 2 values, have " + std::to_string(xs.size()));
  SampleStats s;
  s.n = xs.size();
  s.mean = mean(xs);
  s.variance = kernels::sum_sq_dev(xs, s.mean) / static_cast<double>(s.n - 1);
  s.std_dev = std::sqrt(s.variance);
  return s;
}

double covariance(std::span<const double> xs, std::span<const double> ys) {
  require_pairs(xs, ys);
  return kernels::sum_cross_dev(xs, ys, mean(xs), mean(ys)) / static_cast<double>(xs.size() - 1);
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
  require_pairs(xs, ys);
  const SampleStats sx = sample_stats(xs);
  const SampleStats sy = sample_stats(ys);
  if (sx.std_dev == 0.0 || sy.std_dev == 0.0)
    throw Error(ErrorCode::ZeroVariance, "correlation with a constant sample is undefined");
  const double cov =
      kernels::sum_cross_dev(xs, ys, sx.mean, sy.mean) / static_cast<double>(xs.size() - 1);
  const double r = cov / (sx.std_dev * sy.std_dev);
  if (std::abs(r) > 1.0 + kClampSlack)
    throw Error(ErrorCode::InvalidArgument, "correlation overshoot beyond rounding");
  return std::clamp(r, -1.0, 1.0);
}

StandardScore standard_score(double x, std::span<const double> xs) {
  const SampleStats s = sample_stats(xs);
  if (s.std_dev == 0.0) throw Error(ErrorCode::ZeroVariance, "standard score of a constant sample");
  StandardScore z;
  z.x = x;
  z.mean = s.mean;
  z.sigma = s.std_dev;
  z.n = s.n;
  z.value = (x - s.mean) / (s.std_dev / std::sqrt(static_cast<double>(s.n)));
  return z;
}

AlignedReturns align_by_date(const ReturnSeries& a, const ReturnSeries& b) {
  AlignedReturns out;
  const auto& pa = a.points();
  const auto& pb = b.points();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    if (pa[i].date < pb[j].date) {
      ++i;
    } else if (pb[j].date < pa[i].date) {
      ++j;
    } else {
      out.dates.push_back(pa[i].date);
      out.a.push_back(pa[i].value);
      out.b.push_back(pb[j].value);
      ++i;
      ++j;
    }
  }
  if (out.dates.empty())
    throw Error(ErrorCode::NoOverlap, a.ticker() + " and " + b.ticker() + " share no dates");
  return out;
}

}  // namespace sigmarev
