#pragma once

#include <span>
#include <vector>

namespace dfcast::experiments {

/// 1-based fractional ranks; tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks. Throws Errc::shape unless both
/// inputs have the same length >= 2, and Errc::undefined_correlation when
/// either input is constant.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace dfcast::experiments
