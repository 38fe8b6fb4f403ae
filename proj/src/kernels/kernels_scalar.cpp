#include "eft.hpp"
#include "sigmarev/kernels.hpp"

namespace sigmarev::kernels {
namespace {

using detail::Accumulator;

double sum_scalar(const double* x, std::size_t n) {
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(x[i]);
  return acc.result();
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double m) {
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - m;
    acc.add_product(d, d);
  }
  return acc.result();
}

double sum_cross_dev_scalar(const double* x, const double* y, std::size_t n, double mx, double my) {
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.add_product(x[i] - mx, y[i] - my);
  return acc.result();
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  Accumulator acc;
  for (std::size_t i = 0; i < n; ++i) acc.add_product(x[i], y[i]);
  return acc.result();
}

void price_ratios_scalar(const double* p, std::size_t n, double offset, double* out) {
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = p[i + 1] / p[i] - offset;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable t{Isa::Scalar,       sum_scalar, sum_sq_dev_scalar,
                             sum_cross_dev_scalar, dot_scalar, price_ratios_scalar};
  return t;
}

}  // namespace sigmarev::kernels
