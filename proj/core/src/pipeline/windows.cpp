#include "dfcast/pipeline/windows.hpp"

#include "dfcast/error.hpp"

namespace dfcast::pipeline {

std::size_t window_count(std::size_t rows, std::size_t window, std::size_t horizon) {
  return rows >= window + horizon ? rows - window - horizon + 1 : 0;
}

std::vector<WindowedSample> make_windows(const Eigen::MatrixXd& inputs,
                                         const Eigen::VectorXd& targets, std::size_t window,
                                         std::size_t horizon) {
  return make_windows(inputs, targets, window, horizon,
                      RowRange{0, static_cast<std::size_t>(targets.size())});
}

std::vector<WindowedSample> make_windows(const Eigen::MatrixXd& inputs,
                                         const Eigen::VectorXd& targets, std::size_t window,
                                         std::size_t horizon, RowRange target_rows) {
  if (window == 0 || horizon == 0) throw Error(Errc::config, "window and horizon must be >= 1");
  if (inputs.rows() != targets.size()) {
    throw Error(Errc::shape, "inputs and targets have different row counts");
  }
  const auto rows = static_cast<std::size_t>(targets.size());
  const std::size_t end = std::min(target_rows.end, rows);
  std::vector<WindowedSample> out;
  if (rows < window + horizon) return out;
  // origin o uses input rows [o - window + 1, o] and target rows [o + 1, o + horizon]
  std::size_t first_origin = window - 1;
  if (target_rows.begin > first_origin + 1) first_origin = target_rows.begin - 1;
  for (std::size_t o = first_origin; o + horizon < end; ++o) {
    WindowedSample s;
    s.origin = o;
    s.input = inputs.middleRows(static_cast<Eigen::Index>(o + 1 - window),
                                static_cast<Eigen::Index>(window));
    s.target = targets.segment(static_cast<Eigen::Index>(o + 1), static_cast<Eigen::Index>(horizon));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dfcast::pipeline
