#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sigmarev/kernels.hpp"
#include "support/synthetic.hpp"

using namespace sigmarev;
using kernels::Isa;

namespace {

// Independent reference: quad-precision accumulation.
double ref_sum(const std::vector<double>& x) {
  __float128 s = 0;
  for (double v : x) s += v;
  return static_cast<double>(s);
}

double ref_sum_sq_dev(const std::vector<double>& x, double m) {
  __float128 s = 0;
  for (double v : x) {
    const __float128 d = static_cast<__float128>(v) - m;
    s += d * d;
  }
  return static_cast<double>(s);
}

double ref_dot(const std::vector<double>& x, const std::vector<double>& y) {
  __float128 s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<__float128>(x[i]) * y[i];
  return static_cast<double>(s);
}

bool close_ulps(double a, double b, double ulps = 4.0) {
  if (a == b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * scale + 1e-300;
}

std::vector<double> mixed(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 7) - 3);
  return out;
}

}  // namespace

TEST_CASE("scalar kernels match the quad-precision reference") {
  const auto& k = kernels::scalar_table();
  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 8u, 9u, 31u, 252u, 1001u}) {
    const auto x = mixed(n, 11 + n);
    const auto y = mixed(n, 97 + n);
    CHECK(close_ulps(k.sum(x.data(), n), ref_sum(x)));
    CHECK(close_ulps(k.dot(x.data(), y.data(), n), ref_dot(x, y)));
    const double m = n ? ref_sum(x) / static_cast<double>(n) : 0.0;
    CHECK(close_ulps(k.sum_sq_dev(x.data(), n, m), ref_sum_sq_dev(x, m)));
  }
}

TEST_CASE("compensation recovers what naive summation loses") {
  const std::vector<double> x{1e16, 1.0, -1e16, 1.0, 1e-3};
  for (Isa isa : kernels::available()) {
    const auto* k = kernels::table(isa);
    CAPTURE(kernels::name(isa));
    CHECK(k->sum(x.data(), x.size()) == doctest::Approx(2.001).epsilon(1e-15));
  }
}

TEST_CASE("vector kernels are equivalent to the scalar reference") {
  const auto* simd = kernels::table(Isa::Avx2);
  if (!simd) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  const auto& ref = kernels::scalar_table();
  for (std::size_t n = 0; n <= 67; ++n) {
    CAPTURE(n);
    const auto x = mixed(n, 1000 + n);
    const auto y = mixed(n, 5000 + n);
    CHECK(close_ulps(simd->sum(x.data(), n), ref.sum(x.data(), n), 2.0));
    CHECK(close_ulps(simd->dot(x.data(), y.data(), n), ref.dot(x.data(), y.data(), n), 2.0));
    CHECK(close_ulps(simd->sum_sq_dev(x.data(), n, 0.125), ref.sum_sq_dev(x.data(), n, 0.125), 2.0));
    CHECK(close_ulps(simd->sum_cross_dev(x.data(), y.data(), n, 0.1, -0.2),
                     ref.sum_cross_dev(x.data(), y.data(), n, 0.1, -0.2), 2.0));
  }
  // Return-sized inputs used by the statistics modules.
  const auto r = testing::gaussian(1533, 7, 0.02);
  CHECK(close_ulps(simd->sum(r.data(), r.size()), ref.sum(r.data(), r.size()), 1.0));
  CHECK(close_ulps(simd->sum_sq_dev(r.data(), r.size(), 0.001),
                   ref.sum_sq_dev(r.data(), r.size(), 0.001), 1.0));
}

TEST_CASE("price ratios are bit-identical across variants") {
  std::vector<double> p{100.0, 101.5, 99.25, 99.25, 120.0, 80.0, 81.0, 82.5, 79.0, 79.01, 1e-4};
  for (Isa isa : kernels::available()) {
    const auto* k = kernels::table(isa);
    for (double offset : {0.0, 1.0}) {
      std::vector<double> out(p.size() - 1);
      k->price_ratios(p.data(), p.size(), offset, out.data());
      for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(out[i] == p[i + 1] / p[i] - offset);
    }
  }
}

TEST_CASE("dispatch honours force and reset") {
  CHECK(kernels::supported(Isa::Scalar));
  REQUIRE(kernels::force(Isa::Scalar));
  CHECK(kernels::active().isa == Isa::Scalar);
  if (kernels::supported(Isa::Avx2)) {
    REQUIRE(kernels::force(Isa::Avx2));
    CHECK(kernels::active().isa == Isa::Avx2);
  } else {
    CHECK_FALSE(kernels::force(Isa::Avx2));
    CHECK(kernels::active().isa == Isa::Scalar);
  }
  kernels::reset();
  CHECK(kernels::name(kernels::active().isa).size() > 0);
}
