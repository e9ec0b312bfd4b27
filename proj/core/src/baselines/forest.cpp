#include "dfcast/baselines/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dfcast/error.hpp"

namespace dfcast::baselines {

Split best_split(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 std::span<const std::size_t> rows, std::span<const std::size_t> features) {
  Split best;
  const std::size_t n = rows.size();
  if (n < 2) return best;
  double total = 0.0, total_sq = 0.0;
  for (std::size_t r : rows) {
    total += y(static_cast<Eigen::Index>(r));
    total_sq += y(static_cast<Eigen::Index>(r)) * y(static_cast<Eigen::Index>(r));
  }

  std::vector<std::pair<double, double>> pairs(n);  // (x, y) sorted by x
  for (std::size_t f : features) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<Eigen::Index>(rows[i]);
      pairs[i] = {x(r, static_cast<Eigen::Index>(f)), y(r)};
    }
    std::sort(pairs.begin(), pairs.end());
    double left = 0.0, left_sq = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      left += pairs[i].second;
      left_sq += pairs[i].second * pairs[i].second;
      if (pairs[i].first == pairs[i + 1].first) continue;
      const auto nl = static_cast<double>(i + 1);
      const auto nr = static_cast<double>(n - i - 1);
      const double right = total - left;
      const double right_sq = total_sq - left_sq;
      const double sse = (left_sq - left * left / nl) + (right_sq - right * right / nr);
      // The running-sum SSE carries rounding noise; near-equal values count as ties.
      if (!best.valid || sse < best.sse - 1e-9 * (1.0 + std::abs(best.sse))) {
        best = Split{true, f, 0.5 * (pairs[i].first + pairs[i + 1].first), sse};
      }
    }
  }
  return best;
}

RegressionTree RegressionTree::fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                   std::vector<std::size_t> rows, const TreeOptions& options,
                                   std::mt19937_64& rng) {
  if (rows.empty()) throw Error(Errc::empty_input, "tree: no rows");
  RegressionTree tree;
  tree.grow(x, y, std::move(rows), 0, options, rng);
  return tree;
}

int RegressionTree::grow(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                         std::vector<std::size_t> rows, int depth, const TreeOptions& options,
                         std::mt19937_64& rng) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{});
  double sum = 0.0;
  for (std::size_t r : rows) sum += y(static_cast<Eigen::Index>(r));
  nodes_[id].value = sum / static_cast<double>(rows.size());
  if (depth >= options.max_depth || rows.size() <= options.max_leaf_rows) return id;

  const auto p = static_cast<std::size_t>(x.cols());
  const std::size_t mtry = std::clamp<std::size_t>(
      options.mtry == 0 ? (p + 2) / 3 : options.mtry, std::size_t{1}, p);
  std::vector<std::size_t> features(p);
  std::iota(features.begin(), features.end(), 0);
  for (std::size_t i = 0; i < mtry; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, p - 1);
    std::swap(features[i], features[pick(rng)]);
  }
  features.resize(mtry);
  std::sort(features.begin(), features.end());

  const Split split = best_split(x, y, rows, features);
  if (!split.valid) return id;

  std::vector<std::size_t> left, right;
  for (std::size_t r : rows) {
    (x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(split.feature)) <= split.threshold
         ? left
         : right)
        .push_back(r);
  }
  rows.clear();
  rows.shrink_to_fit();
  nodes_[id].feature = static_cast<int>(split.feature);
  nodes_[id].threshold = split.threshold;
  const int l = grow(x, y, std::move(left), depth + 1, options, rng);
  const int r = grow(x, y, std::move(right), depth + 1, options, rng);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

double RegressionTree::predict(const Eigen::Ref<const Eigen::VectorXd>& row) const {
  int id = 0;
  while (nodes_[id].feature >= 0) {
    const auto& node = nodes_[id];
    id = row(node.feature) <= node.threshold ? node.left : node.right;
  }
  return nodes_[id].value;
}

double RandomForest::predict(const Eigen::Ref<const Eigen::VectorXd>& row) const {
  if (trees.empty()) throw Error(Errc::empty_input, "forest has no trees");
  double sum = 0.0;
  for (const auto& t : trees) sum += t.predict(row);
  return sum / static_cast<double>(trees.size());
}

RandomForest rf_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::size_t n_trees,
                    std::mt19937_64& rng, const TreeOptions& options) {
  if (x.rows() < 2 || x.rows() != y.size()) {
    throw Error(Errc::empty_input, "random forest needs at least two aligned training rows");
  }
  const auto n = static_cast<std::size_t>(x.rows());
  RandomForest forest;
  forest.trees.reserve(n_trees);
  std::uniform_int_distribution<std::size_t> draw(0, n - 1);
  for (std::size_t t = 0; t < n_trees; ++t) {
    std::vector<std::size_t> rows(n);
    if (options.bootstrap) {
      for (auto& r : rows) r = draw(rng);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    forest.trees.push_back(RegressionTree::fit(x, y, std::move(rows), options, rng));
  }
  return forest;
}

}  // namespace dfcast::baselines
