#include <atomic>
#include <cstdlib>
#include <string_view>

#include "sigmarev/kernels.hpp"

namespace sigmarev::kernels {

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(SIGMAREV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* table(Isa isa) noexcept {
  if (!supported(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar: return &scalar_table();
#if defined(SIGMAREV_HAVE_AVX2)
    case Isa::Avx2: return &avx2_table();
#else
    case Isa::Avx2: return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2})
    if (supported(isa)) out.push_back(isa);
  return out;
}

namespace {

const KernelTable* select() noexcept {
  const char* env = std::getenv("SIGMAREV_KERNEL");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return &scalar_table();
  if (want == "avx2") {
    if (const KernelTable* t = table(Isa::Avx2)) return t;
    return &scalar_table();
  }
  if (const KernelTable* t = table(Isa::Avx2)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() noexcept {
  static std::atomic<const KernelTable*> current{select()};
  return current;
}

}  // namespace

const KernelTable& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool force(Isa isa) noexcept {
  const KernelTable* t = table(isa);
  if (!t) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

void reset() noexcept { slot().store(select(), std::memory_order_release); }

}  // namespace sigmarev::kernels
