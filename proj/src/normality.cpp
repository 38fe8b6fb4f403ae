#include "sigmarev/normality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "sigmarev/error.hpp"
#include "sigmarev/kernels.hpp"
#include "sigmarev/stats.hpp"

namespace sigmarev {
namespace {

template <std::size_t N>
double poly(const double (&c)[N], double x) {
  // c[0] + c[1] x + ... + c[N-1] x^(N-1), Horner form.
  double r = c[N - 1];
  for (std::size_t j = N - 1; j-- > 0;) r = r * x + c[j];
  return r;
}

// Royston (1995) approximation constants.
constexpr double kC1[] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr double kC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[] = {0.5440, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[] = {-0.4803, -0.082676, 0.0030302};
constexpr double kGamma[] = {-2.273, 0.459};

double sw_p_value(double w, std::size_t n) {
  if (n == 3) {
    // Exact distribution for n = 3.
    const double p = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
    return std::clamp(p, 0.0, 1.0);
  }
  const double nn = static_cast<double>(n);
  double y = std::log(1.0 - w);
  double m, s;
  if (n <= 11) {
    const double gamma = poly(kGamma, nn);
    if (y >= gamma) return 1e-99;
    y = -std::log(gamma - y);
    m = poly(kC3, nn);
    s = std::exp(poly(kC4, nn));
  } else {
    const double ln = std::log(nn);
    m = poly(kC5, ln);
    s = std::exp(poly(kC6, ln));
  }
  return normal_upper_tail((y - m) / s);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -INFINITY;
    if (p == 1.0) return INFINITY;
    return NAN;
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

std::vector<double> shapiro_wilk_coefficients(std::size_t n) {
  if (n < kShapiroMinN) throw Error(ErrorCode::SampleTooSmall, "n = " + std::to_string(n));
  if (n > kShapiroMaxN) throw Error(ErrorCode::SampleTooLarge, "n = " + std::to_string(n));

  const std::size_t half = n / 2;
  // upper[i] weights the (i+1)-th largest order statistic.
  std::vector<double> upper(half);
  if (n == 3) {
    upper[0] = std::sqrt(0.5);
  } else {
    const double nn = static_cast<double>(n);
    std::vector<double> m(half);
    for (std::size_t i = 0; i < half; ++i)
      m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (nn + 0.25));
    const double summ2 = 2.0 * kernels::dot(m, m);
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(nn);
    const double a1 = poly(kC1, rsn) - m[0] / ssumm2;
    upper[0] = a1;

    std::size_t first_scaled;
    double fac;
    if (n > 5) {
      const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
      upper[1] = a2;
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      first_scaled = 2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
      first_scaled = 1;
    }
    for (std::size_t i = first_scaled; i < half; ++i) upper[i] = -m[i] / fac;
  }

  std::vector<double> a(n, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    a[n - 1 - i] = upper[i];
    a[i] = -upper[i];
  }
  return a;
}

NormalityReport shapiro_wilk(std::span<const double> xs, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  const std::size_t n = xs.size();
  NormalityReport rep;
  rep.coefficients = shapiro_wilk_coefficients(n);

  std::vector<double> x(xs.begin(), xs.end());
  std::sort(x.begin(), x.end());
  if (!(x.back() - x.front() > 0.0))
    throw Error(ErrorCode::DegenerateSample, "all " + std::to_string(n) + " values are equal");

  const double mu = mean(x);
  for (double& v : x) v -= mu;
  const double ss = kernels::sum_sq_dev(x, 0.0);
  if (!(ss > 0.0)) throw Error(ErrorCode::DegenerateSample, "zero sum of squares");
  const double lin = kernels::dot(rep.coefficients, x);

  rep.n = n;
  rep.w = std::min(1.0, lin * lin / ss);
  rep.p_value = sw_p_value(rep.w, n);
  rep.alpha = alpha;
  rep.reject_normality = rep.p_value < alpha;
  return rep;
}

std::size_t sturges_bins(std::size_t n) noexcept {
  if (n <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) + 1.0));
}

std::vector<HistogramBin> density_histogram(std::span<const double> xs,
                                            std::optional<std::size_t> bins) {
  if (xs.size() < 2)
    throw Error(ErrorCode::InsufficientData, "histogram needs at least 2 values");
  if (bins && *bins == 0) throw Error(ErrorCode::InvalidArgument, "zero bins");
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it, hi = *hi_it;
  const double total = static_cast<double>(xs.size());
  if (!(hi > lo)) return {{lo, 1.0, 1.0}};

  const std::size_t k = bins ? *bins : sturges_bins(xs.size());
  const double width = (hi - lo) / static_cast<double>(k);
  std::vector<std::size_t> counts(k, 0);
  for (double v : xs) {
    auto idx = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(idx, k - 1)]++;
  }
  std::vector<HistogramBin> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].center = lo + (static_cast<double>(i) + 0.5) * width;
    out[i].width = width;
    out[i].density = static_cast<double>(counts[i]) / (total * width);
  }
  return out;
}

std::vector<double> histogram_breaks(std::span<const double> xs) {
  if (xs.size() < 2)
    throw Error(ErrorCode::InsufficientData, "histogram needs at least 2 values");
  const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) throw Error(ErrorCode::DegenerateSample, "constant sample has no breaks");

  const double cell = (hi - lo) / static_cast<double>(sturges_bins(xs.size()));
  const double base = std::pow(10.0, std::floor(std::log10(cell)));
  constexpr double h = 1.5;
  constexpr double h5 = 0.5 + 1.5 * h;
  double unit = base;
  if (2.0 * base - cell < h * (cell - unit)) {
    unit = 2.0 * base;
    if (5.0 * base - cell < h5 * (cell - unit)) {
      unit = 5.0 * base;
      if (10.0 * base - cell < h * (cell - unit)) unit = 10.0 * base;
    }
  }
  const double first = std::floor(lo / unit + 1e-7);
  const double last = std::ceil(hi / unit - 1e-7);
  std::vector<double> out;
  for (double k = first; k <= last; k += 1.0) out.push_back(k * unit);
  return out;
}

double sorted_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw Error(ErrorCode::InsufficientData, "quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

QqPlotData qq_plot_data(std::span<const double> xs) {
  if (xs.size() < 3) throw Error(ErrorCode::InsufficientData, "QQ plot needs at least 3 values");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  QqPlotData qq;
  qq.points.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    qq.points.push_back(
        {normal_quantile((static_cast<double>(i + 1) - 0.375) / (n + 0.25)), sorted[i]});
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  qq.slope = iqr / (2.0 * normal_quantile(0.75));
  qq.intercept = sorted_quantile(sorted, 0.5);
  return qq;
}

namespace {

void write_xy(std::ostream& out, double x, double y) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", x, y);
  out << buf;
}

}  // namespace

void write_qq_csv(const QqPlotData& qq, std::ostream& out) {
  out << "x,y\n";
  for (const QqPoint& p : qq.points) write_xy(out, p.theoretical, p.sample);
}

void write_histogram_csv(std::span<const HistogramBin> bins, std::ostream& out) {
  out << "x,y\n";
  for (const HistogramBin& b : bins) write_xy(out, b.center, b.density);
}

}  // namespace sigmarev
