#pragma once

// Error-free transformations shared by the scalar kernels and the lane folds
// of the vector kernels.

#include <cmath>

namespace sigmarev::kernels::detail {

/// s + e == a + b exactly (Knuth).
inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bp = s - a;
  e = (a - (s - bp)) + (b - bp);
}

/// Running compensated accumulator.
struct Accumulator {
  double s = 0.0;
  double c = 0.0;

  void add(double x) noexcept {
    double e;
    two_sum(s, x, s, e);
    c += e;
  }
  /// Adds p together with the rounding error of the product that produced it.
  void add_product(double a, double b) noexcept {
    const double p = a * b;
    const double pe = std::fma(a, b, -p);
    double e;
    two_sum(s, p, s, e);
    c += e + pe;
  }
  void merge(double lane_s, double lane_c) noexcept {
    double e;
    two_sum(s, lane_s, s, e);
    c += e + lane_c;
  }
  double result() const noexcept { return s + c; }
};

}  // namespace sigmarev::kernels::detail
