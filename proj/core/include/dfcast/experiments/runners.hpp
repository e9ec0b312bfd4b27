#pragma once

#include <map>
#include <string>
#include <vector>

#include "dfcast/baselines/runner.hpp"
#include "dfcast/eval/metrics.hpp"
#include "dfcast/experiments/feature_sets.hpp"
#include "dfcast/nn/model_io.hpp"
#include "dfcast/pipeline/prepare.hpp"

namespace dfcast::experiments {

/// Forecasts, actuals and per-lookahead errors of one series on one split.
struct SeriesEvaluation {
  SeriesKey key;
  std::vector<std::size_t> origins;
  std::vector<std::vector<double>> forecasts;  // demand units, clamped at zero
  std::vector<std::vector<double>> actuals;
  eval::LookaheadErrors errors;
};

struct RunResult {
  nn::TrainedModel model;
  std::vector<SeriesEvaluation> evaluations;  // test split, one per model series
  bool used_fallback = false;                 // pretrain only
  std::size_t related_used = 0;               // pretrain only
};

/// Evaluates a single-series network on the given samples.
SeriesEvaluation evaluate_network(const nn::Parameters& params, const pipeline::PreparedSeries& series,
                                  std::span<const pipeline::WindowedSample> samples);

/// Fits and evaluates a baseline on the test split.
SeriesEvaluation evaluate_baseline(baselines::BaselineTag tag, const pipeline::PreparedSeries& series,
                                   const baselines::BaselineOptions& options = {});

/// Standard pipeline: prepare with `features`, train, evaluate on test.
RunResult run_single(const ingest::FeatureMatrix& fm, Date series_start, const FeatureSet& features,
                     const nn::ModelConfig& config);

RunResult run_univariate(const ingest::FeatureMatrix& fm, Date series_start, const nn::ModelConfig& config);

/// Series tagged with its product category.
struct CategorizedSeries {
  const ingest::FeatureMatrix* features = nullptr;
  std::string category;
};

struct FeatureScore {
  std::string category;
  std::string feature_set;
  double validation_mmape = 0.0;  // mean over the category's series
};

struct FeatureSearchResult {
  std::map<std::string, FeatureSet> best;  // per category
  std::vector<FeatureScore> table;         // candidates x categories
};

/// Trains every candidate on every series and keeps, per category, the set
/// with the lowest mean validation mMAPE. Throws Errc::config for no candidates.
FeatureSearchResult run_feature_search(const std::vector<CategorizedSeries>& series, Date series_start,
                                       const std::vector<FeatureSet>& candidates,
                                       const nn::ModelConfig& config, unsigned jobs = 1);

/// Spearman correlation of demand on the dates both series share inside
/// `interval`. Throws like spearman().
double demand_correlation(const ingest::FeatureMatrix& a, const ingest::FeatureMatrix& b,
                          const DateInterval& interval);

/// Pretrains on the pooled windows of related series whose training-period
/// demand correlates with the target's at |rho| >= threshold, then fine-tunes
/// every parameter on the target. With nothing passing the filter this is
/// run_single with the same seed and used_fallback is set.
RunResult run_pretrain(const ingest::FeatureMatrix& target, const std::vector<ingest::FeatureMatrix>& related,
                       Date series_start, const FeatureSet& features, const nn::ModelConfig& config,
                       double threshold = 0.2);

/// Prepared inputs of a multi-product model: windows whose rows concatenate
/// the products' scaled features and whose targets stack their horizons.
struct ParallelData {
  std::vector<pipeline::PreparedSeries> series;
  std::vector<pipeline::WindowedSample> train;
  std::vector<pipeline::WindowedSample> validation;
  std::vector<pipeline::WindowedSample> test;
};

/// Throws Errc::alignment unless all series share the same dates. Scalers
/// are fitted per product unless `scalers` supplies one per product.
ParallelData prepare_parallel(const std::vector<const ingest::FeatureMatrix*>& products, Date series_start,
                              const std::vector<std::string>& columns, std::size_t window = pipeline::kInputWindow,
                              std::size_t horizon = pipeline::kHorizon,
                              const std::vector<pipeline::MinMaxScaler>* scalers = nullptr);

/// One model forecasting every product at once (6 outputs per product).
RunResult run_parallel(const std::vector<const ingest::FeatureMatrix*>& products, Date series_start,
                       const FeatureSet& features, const nn::ModelConfig& config);

/// Test-split evaluation of a saved model. `series[i]` must be the feature
/// matrix of model.series[i]; the model's own scalers are applied.
std::vector<SeriesEvaluation> evaluate_model(const nn::TrainedModel& model,
                                             const std::vector<const ingest::FeatureMatrix*>& series,
                                             Date series_start);

/// Forecasts of every model series issued at `origin`, in demand units.
/// Throws Errc::config when the origin is not a working day of the series
/// or has fewer than `input_window` rows up to it.
std::vector<std::vector<double>> forecast_at(const nn::TrainedModel& model,
                                             const std::vector<const ingest::FeatureMatrix*>& series,
                                             Date origin);

}  // namespace dfcast::experiments
