#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dfcast::baselines {

struct TreeOptions {
  int max_depth = 12;
  std::size_t max_leaf_rows = 5;  // a node with this many rows or fewer is a leaf
  std::size_t mtry = 0;           // candidate features per node; 0 means ceil(p / 3)
  bool bootstrap = true;
};

/// A candidate split: rows with x[feature] <= threshold go left.
struct Split {
  bool valid = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double sse = 0.0;  // summed squared deviation of both children
};

/// Best split of `rows` over `features`, minimizing the children's summed
/// squared deviations. Thresholds are midpoints between consecutive distinct
/// values; ties keep the earliest feature, then the lowest threshold.
Split best_split(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 std::span<const std::size_t> rows, std::span<const std::size_t> features);

class RegressionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };

  static RegressionTree fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                            std::vector<std::size_t> rows, const TreeOptions& options,
                            std::mt19937_64& rng);

  double predict(const Eigen::Ref<const Eigen::VectorXd>& row) const;
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  int grow(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::vector<std::size_t> rows,
           int depth, const TreeOptions& options, std::mt19937_64& rng);

  std::vector<Node> nodes_;
};

struct RandomForest {
  std::vector<RegressionTree> trees;

  double predict(const Eigen::Ref<const Eigen::VectorXd>& row) const;
};

/// Bagged CART regression trees. Throws Errc::empty_input when fewer than
/// two rows are given.
RandomForest rf_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, std::size_t n_trees,
                    std::mt19937_64& rng, const TreeOptions& options = {});

}  // namespace dfcast::baselines
