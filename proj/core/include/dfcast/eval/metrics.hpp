#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dfcast::eval {

inline constexpr std::size_t kLookaheads = 6;

/// (1/m) sum |F_t - A_t|. Throws Errc::shape on length mismatch or empty input.
double mae(std::span<const double> forecast, std::span<const double> actual);

/// (1/m) sum |F_t - A_t| / (1 + |A_t|); finite when actual demand is zero.
double mmape(std::span<const double> forecast, std::span<const double> actual);

/// Per-lookahead errors of one product, each averaged over m origins.
struct LookaheadErrors {
  std::array<double, kLookaheads> mae{};
  std::array<double, kLookaheads> mmape{};
  std::size_t origins = 0;

  double mean_mae() const;
  double mean_mmape() const;
};

/// forecasts[i] and actuals[i] are the 6-vectors issued at origins[i]. Throws
/// Errc::alignment when the origin lists differ or a vector is not 6 long.
LookaheadErrors lookahead_errors(std::span<const std::size_t> forecast_origins,
                                 const std::vector<std::vector<double>>& forecasts,
                                 std::span<const std::size_t> actual_origins,
                                 const std::vector<std::vector<double>>& actuals);

struct OverallMeans {
  double mae = 0.0;
  double mmape = 0.0;
};

/// Mean over lookaheads, then unweighted mean over products.
OverallMeans overall_means(std::span<const LookaheadErrors> products);

struct BoxPlotStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<std::pair<std::string, double>> outliers;
};

/// Type-7 (linear interpolation) quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

/// Whiskers reach the furthest data point within 1.5 IQR of the quartiles;
/// anything beyond is an outlier. Throws Errc::empty_input on no values.
BoxPlotStats boxplot_stats(const std::vector<std::pair<std::string, double>>& labelled_values);

}  // namespace dfcast::eval
