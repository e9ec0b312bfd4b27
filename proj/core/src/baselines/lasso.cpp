#include "dfcast/baselines/lasso.hpp"

#include <cmath>

#include "dfcast/error.hpp"

namespace dfcast::baselines {

Standardizer Standardizer::fit(const Eigen::MatrixXd& x) {
  if (x.rows() == 0) throw Error(Errc::empty_input, "standardizer: no rows");
  Standardizer s;
  s.mean = x.colwise().mean().transpose();
  s.sd.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double var = (x.col(j).array() - s.mean(j)).square().mean();
    s.sd(j) = var > 1e-24 ? std::sqrt(var) : 0.0;
  }
  return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean.size()) throw Error(Errc::shape, "standardizer: column count mismatch");
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if (sd(j) > 0) {
      out.col(j) = (x.col(j).array() - mean(j)) / sd(j);
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

double soft_threshold(double value, double lambda) {
  if (value > lambda) return value - lambda;
  if (value < -lambda) return value + lambda;
  return 0.0;
}

double lasso_objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                       double intercept, const Eigen::VectorXd& coefficients) {
  const Eigen::VectorXd r = y - x * coefficients - Eigen::VectorXd::Constant(y.size(), intercept);
  return r.squaredNorm() / (2.0 * static_cast<double>(y.size())) + lambda * coefficients.lpNorm<1>();
}

LassoFit lasso_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
                   const LassoOptions& options) {
  if (x.rows() != y.size()) throw Error(Errc::shape, "lasso: rows of X and y differ");
  if (x.rows() == 0) throw Error(Errc::empty_input, "lasso: no rows");
  if (!x.allFinite() || !y.allFinite()) throw Error(Errc::numeric, "lasso: non-finite design matrix");
  if (lambda < 0) throw Error(Errc::config, "lasso: lambda must be >= 0");

  const auto n = static_cast<double>(x.rows());
  const Eigen::Index p = x.cols();
  LassoFit fit;
  fit.coefficients = Eigen::VectorXd::Zero(p);
  const Eigen::VectorXd col_scale = x.colwise().squaredNorm().transpose() / n;

  fit.intercept = y.mean();
  Eigen::VectorXd residual = y.array() - fit.intercept;
  for (fit.sweeps = 1; fit.sweeps <= options.max_sweeps; ++fit.sweeps) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double old = fit.coefficients(j);
      double updated = 0.0;
      if (col_scale(j) > 0) {
        const double rho = x.col(j).dot(residual) / n + col_scale(j) * old;
        updated = soft_threshold(rho, lambda) / col_scale(j);
      }
      if (updated != old) {
        residual -= (updated - old) * x.col(j);
        fit.coefficients(j) = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    // intercept is the unpenalized coordinate
    const double shift = residual.mean();
    fit.intercept += shift;
    residual.array() -= shift;
    max_change = std::max(max_change, std::abs(shift));
    fit.objective_trace.push_back(residual.squaredNorm() / (2.0 * n) +
                                  lambda * fit.coefficients.lpNorm<1>());
    if (max_change < options.tolerance) break;
  }
  fit.sweeps = std::min(fit.sweeps, options.max_sweeps);
  return fit;
}

double lasso_predict(const LassoFit& fit, const Eigen::VectorXd& x) {
  if (x.size() != fit.coefficients.size()) throw Error(Errc::shape, "lasso: feature count mismatch");
  return fit.intercept + fit.coefficients.dot(x);
}

std::vector<double> lasso_lambda_grid() { return {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}; }

LassoRegressor LassoRegressor::train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                     double lambda) {
  LassoRegressor r;
  r.lambda = lambda;
  r.standardizer = Standardizer::fit(x);
  r.fit = lasso_fit(r.standardizer.apply(x), y, lambda);
  return r;
}

double LassoRegressor::predict(const Eigen::VectorXd& x) const {
  return lasso_predict(fit, standardizer.apply(x.transpose()).transpose());
}

std::pair<double, Eigen::VectorXd> LassoRegressor::raw_coefficients() const {
  Eigen::VectorXd slopes = Eigen::VectorXd::Zero(fit.coefficients.size());
  double intercept = fit.intercept;
  for (Eigen::Index j = 0; j < slopes.size(); ++j) {
    if (standardizer.sd(j) > 0) {
      slopes(j) = fit.coefficients(j) / standardizer.sd(j);
      intercept -= slopes(j) * standardizer.mean(j);
    }
  }
  return {intercept, slopes};
}

}  // namespace dfcast::baselines
