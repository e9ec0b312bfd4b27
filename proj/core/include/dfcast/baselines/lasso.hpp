#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dfcast::baselines {

/// Column means and population standard deviations of a training design.
/// Constant columns get sd = 0 and standardize to 0.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;

  static Standardizer fit(const Eigen::MatrixXd& x);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

struct LassoOptions {
  double tolerance = 1e-8;  // max absolute coefficient change per sweep
  int max_sweeps = 10000;
};

struct LassoFit {
  double intercept = 0.0;
  Eigen::VectorXd coefficients;
  int sweeps = 0;
  std::vector<double> objective_trace;  // objective after each sweep
};

/// Minimizes (1/2n)||y - X b - b0||^2 + lambda ||b||_1 by cyclic coordinate
/// descent with soft-thresholding. Throws Errc::numeric on non-finite input.
LassoFit lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                   const LassoOptions& options = {});

double lasso_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                       double intercept, const Eigen::VectorXd& coefficients);

double lasso_predict(const LassoFit& fit, const Eigen::VectorXd& x);

double soft_threshold(double value, double lambda);

/// {0} together with 10^k for k = -4 .. 1.
std::vector<double> lasso_lambda_grid();

/// Standardization plus lasso, predicting on raw feature rows.
struct LassoRegressor {
  Standardizer standardizer;
  LassoFit fit;
  double lambda = 0.0;

  static LassoRegressor train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda);
  double predict(const Eigen::VectorXd& x) const;

  /// Coefficients mapped back to raw feature units: (intercept, slopes).
  std::pair<double, Eigen::VectorXd> raw_coefficients() const;
};

}  // namespace dfcast::baselines
