#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace dfcast::pipeline {

inline constexpr std::size_t kInputWindow = 36;
inline constexpr std::size_t kHorizon = 6;

/// Half-open row range [begin, end).
struct RowRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end > begin ? end - begin : 0; }
  bool contains(std::size_t row) const { return begin <= row && row < end; }
  bool operator==(const RowRange&) const = default;
};

/// One moving-window training pair. `input` has one row per time step;
/// target(k) is the demand k+1 working days after `origin`, the row index of
/// the last input step.
struct WindowedSample {
  Eigen::MatrixXd input;   // window x features
  Eigen::VectorXd target;  // horizon
  std::size_t origin = 0;
};

/// max(0, rows - window - horizon + 1)
std::size_t window_count(std::size_t rows, std::size_t window, std::size_t horizon);

/// Every admissible origin in chronological order. Throws Errc::config when
/// window or horizon is zero and Errc::shape when inputs and targets disagree.
std::vector<WindowedSample> make_windows(const Eigen::MatrixXd& inputs,
                                         const Eigen::VectorXd& targets, std::size_t window,
                                         std::size_t horizon);

/// Same, keeping only samples whose target rows all lie in `target_rows`.
/// Input rows may precede target_rows.begin.
std::vector<WindowedSample> make_windows(const Eigen::MatrixXd& inputs,
                                         const Eigen::VectorXd& targets, std::size_t window,
                                         std::size_t horizon, RowRange target_rows);

}  // namespace dfcast::pipeline
