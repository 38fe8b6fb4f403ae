// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "eft.hpp"
#include "sigmarev/kernels.hpp"

namespace sigmarev::kernels {
namespace {

using detail::Accumulator;

/// Four independent TwoSum accumulators, one per lane.
struct LaneAcc {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  void add(__m256d x) noexcept {
    const __m256d t = _mm256_add_pd(s, x);
    const __m256d bp = _mm256_sub_pd(t, s);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(s, _mm256_sub_pd(t, bp)), _mm256_sub_pd(x, bp));
    s = t;
    c = _mm256_add_pd(c, e);
  }
  void add_product(__m256d a, __m256d b) noexcept {
    const __m256d p = _mm256_mul_pd(a, b);
    const __m256d pe = _mm256_fmsub_pd(a, b, p);
    const __m256d t = _mm256_add_pd(s, p);
    const __m256d bp = _mm256_sub_pd(t, s);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(s, _mm256_sub_pd(t, bp)), _mm256_sub_pd(p, bp));
    s = t;
    c = _mm256_add_pd(c, _mm256_add_pd(e, pe));
  }
  void fold_into(Accumulator& acc) const noexcept {
    alignas(32) double ls[4];
    alignas(32) double lc[4];
    _mm256_store_pd(ls, s);
    _mm256_store_pd(lc, c);
    for (int k = 0; k < 4; ++k) acc.merge(ls[k], lc[k]);
  }
};

double sum_avx2(const double* x, std::size_t n) {
  LaneAcc a0, a1;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0.add(_mm256_loadu_pd(x + i));
    a1.add(_mm256_loadu_pd(x + i + 4));
  }
  if (i + 4 <= n) {
    a0.add(_mm256_loadu_pd(x + i));
    i += 4;
  }
  Accumulator acc;
  a0.fold_into(acc);
  a1.fold_into(acc);
  for (; i < n; ++i) acc.add(x[i]);
  return acc.result();
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double m) {
  const __m256d vm = _mm256_set1_pd(m);
  LaneAcc a0, a1;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), vm);
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), vm);
    a0.add_product(d0, d0);
    a1.add_product(d1, d1);
  }
  if (i + 4 <= n) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), vm);
    a0.add_product(d0, d0);
    i += 4;
  }
  Accumulator acc;
  a0.fold_into(acc);
  a1.fold_into(acc);
  for (; i < n; ++i) {
    const double d = x[i] - m;
    acc.add_product(d, d);
  }
  return acc.result();
}

double sum_cross_dev_avx2(const double* x, const double* y, std::size_t n, double mx, double my) {
  const __m256d vmx = _mm256_set1_pd(mx);
  const __m256d vmy = _mm256_set1_pd(my);
  LaneAcc a0, a1;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0.add_product(_mm256_sub_pd(_mm256_loadu_pd(x + i), vmx),
                   _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy));
    a1.add_product(_mm256_sub_pd(_mm256_loadu_pd(x + i + 4), vmx),
                   _mm256_sub_pd(_mm256_loadu_pd(y + i + 4), vmy));
  }
  if (i + 4 <= n) {
    a0.add_product(_mm256_sub_pd(_mm256_loadu_pd(x + i), vmx),
                   _mm256_sub_pd(_mm256_loadu_pd(y + i), vmy));
    i += 4;
  }
  Accumulator acc;
  a0.fold_into(acc);
  a1.fold_into(acc);
  for (; i < n; ++i) acc.add_product(x[i] - mx, y[i] - my);
  return acc.result();
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  LaneAcc a0, a1;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0.add_product(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    a1.add_product(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
  }
  if (i + 4 <= n) {
    a0.add_product(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    i += 4;
  }
  Accumulator acc;
  a0.fold_into(acc);
  a1.fold_into(acc);
  for (; i < n; ++i) acc.add_product(x[i], y[i]);
  return acc.result();
}

void price_ratios_avx2(const double* p, std::size_t n, double offset, double* out) {
  if (n < 2) return;
  const std::size_t m = n - 1;
  const __m256d voff = _mm256_set1_pd(offset);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d prev = _mm256_loadu_pd(p + i);
    const __m256d next = _mm256_loadu_pd(p + i + 1);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_div_pd(next, prev), voff));
  }
  for (; i < m; ++i) out[i] = p[i + 1] / p[i] - offset;
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable t{Isa::Avx2,          sum_avx2, sum_sq_dev_avx2,
                             sum_cross_dev_avx2, dot_avx2, price_ratios_avx2};
  return t;
}

}  // namespace sigmarev::kernels
