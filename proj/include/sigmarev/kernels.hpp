#pragma once

// Data-parallel arithmetic kernels behind the statistics modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at first use from the CPU feature bits;
// SIGMAREV_KERNEL=scalar|avx2|auto overrides the choice. Reductions are
// compensated (TwoSum accumulation, FMA-exact products), so the variants agree
// to within a couple of ulps even though their summation orders differ.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sigmarev::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  /// Σ x_i
  double (*sum)(const double* x, std::size_t n);
  /// Σ (x_i − m)²
  double (*sum_sq_dev)(const double* x, std::size_t n, double m);
  /// Σ (x_i − mx)(y_i − my)
  double (*sum_cross_dev)(const double* x, const double* y, std::size_t n, double mx, double my);
  /// Σ x_i·y_i
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// out_i = p_{i+1} / p_i − offset for i < n − 1
  void (*price_ratios)(const double* p, std::size_t n, double offset, double* out);
};

const KernelTable& scalar_table() noexcept;
#if defined(SIGMAREV_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

/// True when the variant was built and the running CPU supports it.
bool supported(Isa isa) noexcept;
/// Table for `isa`, or nullptr when unsupported.
const KernelTable* table(Isa isa) noexcept;
/// The table in use.
const KernelTable& active() noexcept;
/// Pin the active table; returns false (and changes nothing) if unsupported.
bool force(Isa isa) noexcept;
/// Re-run automatic selection (honours SIGMAREV_KERNEL).
void reset() noexcept;

std::vector<Isa> available();

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double sum_sq_dev(std::span<const double> x, double m) {
  return active().sum_sq_dev(x.data(), x.size(), m);
}
inline double sum_cross_dev(std::span<const double> x, std::span<const double> y, double mx,
                            double my) {
  return active().sum_cross_dev(x.data(), y.data(), x.size(), mx, my);
}
inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

}  // namespace sigmarev::kernels
