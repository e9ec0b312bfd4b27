#include "dfcast/baselines/runner.hpp"

#include <algorithm>
#include <limits>

#include "dfcast/baselines/ets.hpp"
#include "dfcast/baselines/lasso.hpp"
#include "dfcast/baselines/median.hpp"
#include "dfcast/core/calendar.hpp"
#include "dfcast/error.hpp"

namespace dfcast::baselines {
namespace {

std::vector<double> clamp_nonnegative(std::vector<double> v) {
  for (auto& x : v) x = std::max(0.0, x);
  return v;
}

Eigen::MatrixXd tabular_design(std::span<const pipeline::WindowedSample> samples, std::size_t lags) {
  if (samples.empty()) return {};
  const Eigen::Index width = tabular_row(samples.front(), lags).size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), width);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = tabular_row(samples[i], lags).transpose();
  }
  return x;
}

// Original-unit demand at lookahead k for every sample.
Eigen::VectorXd lookahead_targets(const pipeline::PreparedSeries& series,
                                  std::span<const pipeline::WindowedSample> samples, std::size_t k) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = series.demand(static_cast<Eigen::Index>(samples[i].origin + 1 + k));
  }
  return y;
}

std::vector<std::size_t> origins_of(std::span<const pipeline::WindowedSample> samples) {
  std::vector<std::size_t> out;
  for (const auto& s : samples) out.push_back(s.origin);
  return out;
}

}  // namespace

std::string to_string(BaselineTag tag) {
  switch (tag) {
    case BaselineTag::ets: return "ETS";
    case BaselineTag::mpq: return "MPQ";
    case BaselineTag::mdpq: return "MDPQ";
    case BaselineTag::lr: return "LR";
    case BaselineTag::rf: return "RF";
  }
  return "?";
}

std::optional<BaselineTag> parse_baseline_tag(std::string_view text) {
  for (auto tag : all_baselines()) {
    if (to_string(tag) == text) return tag;
  }
  return std::nullopt;
}

std::vector<BaselineTag> all_baselines() {
  return {BaselineTag::ets, BaselineTag::mpq, BaselineTag::mdpq, BaselineTag::lr, BaselineTag::rf};
}

Eigen::VectorXd tabular_row(const pipeline::WindowedSample& sample, std::size_t lags) {
  const Eigen::Index rows = std::min<Eigen::Index>(static_cast<Eigen::Index>(lags), sample.input.rows());
  const Eigen::Index f = sample.input.cols();
  Eigen::VectorXd out(rows * f);
  for (Eigen::Index r = 0; r < rows; ++r) {
    out.segment(r * f, f) = sample.input.row(sample.input.rows() - rows + r).transpose();
  }
  return out;
}

std::vector<BaselineForecast> run_baseline(BaselineTag tag, const pipeline::PreparedSeries& series,
                                           std::span<const pipeline::WindowedSample> samples,
                                           const BaselineOptions& options) {
  const std::size_t horizon = samples.empty() ? pipeline::kHorizon
                                              : static_cast<std::size_t>(samples.front().target.size());
  const std::span<const double> history(series.demand.data(), static_cast<std::size_t>(series.demand.size()));
  std::vector<BaselineForecast> out;
  out.reserve(samples.size());

  switch (tag) {
    case BaselineTag::ets: {
      const auto val_origins = origins_of(series.validation);
      const double alpha = select_ets_alpha(history, val_origins, horizon);
      for (const auto& s : samples) {
        out.push_back({tag, s.origin, ets_forecast(history.first(s.origin + 1), alpha, horizon)});
      }
      break;
    }
    case BaselineTag::mpq:
      for (const auto& s : samples) {
        out.push_back({tag, s.origin, mpq_forecast(history, s.origin, horizon)});
      }
      break;
    case BaselineTag::mdpq: {
      std::vector<std::size_t> weekdays;
      for (Date d : series.dates) weekdays.push_back(working_weekday_index(d));
      for (const auto& s : samples) {
        const std::span<const std::size_t> targets(weekdays.data() + s.origin + 1, horizon);
        out.push_back({tag, s.origin, mdpq_forecast(history, weekdays, s.origin, targets)});
      }
      break;
    }
    case BaselineTag::lr:
    case BaselineTag::rf: {
      if (series.train.size() < 2) throw Error(Errc::empty_input, "baseline: too few training windows");
      const Eigen::MatrixXd x_train = tabular_design(series.train, options.tabular_lags);
      const Eigen::MatrixXd x_val = tabular_design(series.validation, options.tabular_lags);
      const Eigen::MatrixXd x_eval = tabular_design(samples, options.tabular_lags);
      Eigen::MatrixXd pred(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(horizon));
      std::mt19937_64 rng(options.seed);
      for (std::size_t k = 0; k < horizon; ++k) {
        const Eigen::VectorXd y_train = lookahead_targets(series, series.train, k);
        if (tag == BaselineTag::lr) {
          const Eigen::VectorXd y_val = lookahead_targets(series, series.validation, k);
          LassoRegressor best;
          double best_mse = std::numeric_limits<double>::infinity();
          for (double lambda : lasso_lambda_grid()) {
            auto model = LassoRegressor::train(x_train, y_train, lambda);
            double mse = 0.0;
            for (Eigen::Index i = 0; i < x_val.rows(); ++i) {
              const double e = model.predict(x_val.row(i).transpose()) - y_val(i);
              mse += e * e;
            }
            if (mse < best_mse) {
              best_mse = mse;
              best = std::move(model);
            }
          }
          for (Eigen::Index i = 0; i < x_eval.rows(); ++i) pred(i, Eigen::Index(k)) = best.predict(x_eval.row(i).transpose());
        } else {
          const RandomForest forest = rf_fit(x_train, y_train, options.rf_trees, rng, options.rf_tree);
          for (Eigen::Index i = 0; i < x_eval.rows(); ++i) pred(i, Eigen::Index(k)) = forest.predict(x_eval.row(i).transpose());
        }
      }
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto row = pred.row(static_cast<Eigen::Index>(i));
        out.push_back({tag, samples[i].origin, std::vector<double>(row.begin(), row.end())});
      }
      break;
    }
  }
  for (auto& f : out) f.values = clamp_nonnegative(std::move(f.values));
  return out;
}

}  // namespace dfcast::baselines
