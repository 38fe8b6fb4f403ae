#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace sigmarev {

/// Outcome of a Shapiro-Wilk test. `coefficients` are in ascending
/// order-statistic order and antisymmetric (a_i = −a_{n+1−i}).
struct NormalityReport {
  std::size_t n = 0;
  double w = 0.0;
  double p_value = 0.0;
  double alpha = 0.05;
  bool reject_normality = false;
  std::vector<double> coefficients;
};

struct QqPoint {
  double theoretical = 0.0;
  double sample = 0.0;
};

struct QqPlotData {
  std::vector<QqPoint> points;
  /// Reference line: intercept at the sample median, slope from the
  /// interquartile range divided by the standard-normal IQR.
  double slope = 0.0;
  double intercept = 0.0;
};

struct HistogramBin {
  double center = 0.0;
  double width = 0.0;
  double density = 0.0;
};

inline constexpr std::size_t kShapiroMinN = 3;
inline constexpr std::size_t kShapiroMaxN = 5000;

/// Standard-normal quantile (Wichura AS 241, ~1e-16 relative).
double normal_quantile(double p);
/// Upper tail P(Z > z).
double normal_upper_tail(double z);

/// Royston's polynomial approximation to the Shapiro-Wilk weights m'V⁻¹/|m'V⁻¹|.
/// Valid for 3 <= n <= 5000.
std::vector<double> shapiro_wilk_coefficients(std::size_t n);

/// W = (Σ a_i x_(i))² / Σ (x_i − x̄)² with Royston's p-value.
/// Errors: SampleTooSmall, SampleTooLarge, DegenerateSample, InvalidArgument (alpha).
NormalityReport shapiro_wilk(std::span<const double> xs, double alpha = 0.05);

/// Sturges bin count: ceil(log2 n + 1).
std::size_t sturges_bins(std::size_t n) noexcept;

/// Equal-width bins over [min, max] normalized to unit area. A constant sample
/// yields one unit-width bin centred on the value. InsufficientData for n < 2.
std::vector<HistogramBin> density_histogram(std::span<const double> xs,
                                            std::optional<std::size_t> bins = std::nullopt);

/// Breakpoints of an R-style "pretty" histogram with Sturges' class count.
/// Used only for the bin-breaks compatibility mode of the normality check.
std::vector<double> histogram_breaks(std::span<const double> xs);

/// Blom plotting positions (i − 0.375)/(n + 0.25) against the order
/// statistics. InsufficientData for n < 3.
QqPlotData qq_plot_data(std::span<const double> xs);

/// Type-7 (linear interpolation) sample quantile of a sorted sample.
double sorted_quantile(std::span<const double> sorted, double prob);

void write_qq_csv(const QqPlotData& qq, std::ostream& out);
void write_histogram_csv(std::span<const HistogramBin> bins, std::ostream& out);

}  // namespace sigmarev
