#include "dfcast/experiments/runners.hpp"

#include <algorithm>
#include <cmath>

#include "dfcast/core/parallel.hpp"
#include "dfcast/error.hpp"
#include "dfcast/experiments/spearman.hpp"
#include "dfcast/nn/forecast.hpp"
#include "dfcast/nn/network.hpp"

namespace dfcast::experiments {
namespace {

SeriesEvaluation make_evaluation(const pipeline::PreparedSeries& series,
                                 std::span<const pipeline::WindowedSample> samples,
                                 std::vector<std::vector<double>> forecasts) {
  SeriesEvaluation ev;
  ev.key = series.key;
  ev.origins = nn::origins_of(samples);
  ev.forecasts = std::move(forecasts);
  ev.actuals = nn::actuals_for(series, samples);
  ev.errors = eval::lookahead_errors(ev.origins, ev.forecasts, ev.origins, ev.actuals);
  return ev;
}

nn::TrainedModel wrap(nn::TrainedNetwork net, const FeatureSet& features,
                      const std::vector<const pipeline::PreparedSeries*>& series) {
  nn::TrainedModel model;
  model.network = std::move(net);
  model.feature_columns = features.columns();
  for (const auto* s : series) {
    model.series.push_back(s->key);
    model.scalers.push_back(s->scaler);
  }
  return model;
}

RunResult finish_single(nn::TrainedNetwork net, const pipeline::PreparedSeries& prepared,
                        const FeatureSet& features) {
  RunResult result;
  result.evaluations.push_back(evaluate_network(net.params, prepared, prepared.test));
  result.model = wrap(std::move(net), features, {&prepared});
  return result;
}

}  // namespace

SeriesEvaluation evaluate_network(const nn::Parameters& params, const pipeline::PreparedSeries& series,
                                  std::span<const pipeline::WindowedSample> samples) {
  return make_evaluation(series, samples, nn::forecast_series(params, series, samples));
}

SeriesEvaluation evaluate_baseline(baselines::BaselineTag tag, const pipeline::PreparedSeries& series,
                                   const baselines::BaselineOptions& options) {
  const auto out = baselines::run_baseline(tag, series, series.test, options);
  std::vector<std::vector<double>> forecasts;
  forecasts.reserve(out.size());
  for (const auto& f : out) forecasts.push_back(f.values);
  return make_evaluation(series, series.test, std::move(forecasts));
}

RunResult run_single(const ingest::FeatureMatrix& fm, Date series_start, const FeatureSet& features,
                     const nn::ModelConfig& config) {
  const auto prepared = pipeline::prepare_series(fm, features.columns(), series_start,
                                                 static_cast<std::size_t>(config.input_window),
                                                 static_cast<std::size_t>(config.horizon));
  return finish_single(nn::train(config, prepared.train, prepared.validation), prepared, features);
}

RunResult run_univariate(const ingest::FeatureMatrix& fm, Date series_start, const nn::ModelConfig& config) {
  return run_single(fm, series_start, univariate_set(), config);
}

FeatureSearchResult run_feature_search(const std::vector<CategorizedSeries>& series, Date series_start,
                                       const std::vector<FeatureSet>& candidates,
                                       const nn::ModelConfig& config, unsigned jobs) {
  if (candidates.empty()) throw Error(Errc::config, "feature search needs at least one candidate set");
  if (series.empty()) throw Error(Errc::empty_input, "feature search needs at least one series");
  const std::size_t n = candidates.size() * series.size();
  std::vector<double> scores(n);
  parallel_for(n, jobs, [&](std::size_t task) {
    const auto& set = candidates[task / series.size()];
    const auto& s = series[task % series.size()];
    const auto prepared = pipeline::prepare_series(*s.features, set.columns(), series_start,
                                                   static_cast<std::size_t>(config.input_window),
                                                   static_cast<std::size_t>(config.horizon));
    const auto net = nn::train(config, prepared.train, prepared.validation);
    scores[task] = evaluate_network(net.params, prepared, prepared.validation).errors.mean_mmape();
  });

  std::vector<std::string> categories;
  for (const auto& s : series) categories.push_back(s.category);
  std::sort(categories.begin(), categories.end());
  categories.erase(std::unique(categories.begin(), categories.end()), categories.end());

  FeatureSearchResult result;
  for (const auto& category : categories) {
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i].category != category) continue;
        sum += scores[c * series.size() + i];
        ++count;
      }
      const double score = sum / static_cast<double>(count);
      result.table.push_back({category, candidates[c].name(), score});
      if (c == 0 || score < best_score) {
        best = c;
        best_score = score;
      }
    }
    result.best.emplace(category, candidates[best]);
  }
  return result;
}

double demand_correlation(const ingest::FeatureMatrix& a, const ingest::FeatureMatrix& b,
                          const DateInterval& interval) {
  std::vector<double> xa, xb;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!interval.contains(a.dates[i])) continue;
    while (j < b.rows() && b.dates[j] < a.dates[i]) ++j;
    if (j < b.rows() && b.dates[j] == a.dates[i]) {
      xa.push_back(a.targets(static_cast<Eigen::Index>(i)));
      xb.push_back(b.targets(static_cast<Eigen::Index>(j)));
    }
  }
  return spearman(xa, xb);
}

RunResult run_pretrain(const ingest::FeatureMatrix& target, const std::vector<ingest::FeatureMatrix>& related,
                       Date series_start, const FeatureSet& features, const nn::ModelConfig& config,
                       double threshold) {
  const auto window = static_cast<std::size_t>(config.input_window);
  const auto horizon = static_cast<std::size_t>(config.horizon);
  const auto prepared = pipeline::prepare_series(target, features.columns(), series_start, window, horizon);
  const DateInterval train_period = prepared.split.boundaries.train_interval();

  std::vector<pipeline::WindowedSample> pooled_train, pooled_val;
  std::size_t used = 0;
  for (const auto& r : related) {
    double rho = 0.0;
    try {
      rho = demand_correlation(target, r, train_period);
    } catch (const Error&) {
      continue;  // too little overlap or constant demand
    }
    if (!(std::abs(rho) >= threshold)) continue;
    auto p = pipeline::prepare_series(r, features.columns(), series_start, window, horizon);
    pooled_train.insert(pooled_train.end(), p.train.begin(), p.train.end());
    pooled_val.insert(pooled_val.end(), p.validation.begin(), p.validation.end());
    ++used;
  }

  if (used == 0) {
    auto result = finish_single(nn::train(config, prepared.train, prepared.validation), prepared, features);
    result.used_fallback = true;
    return result;
  }

  const auto phase1 = nn::train(config, pooled_train, pooled_val);
  nn::TrainOptions fine;
  fine.warm_start = phase1.params;
  fine.initial_checkpoint = true;
  auto result = finish_single(nn::train(config, prepared.train, prepared.validation, fine), prepared, features);
  result.related_used = used;
  return result;
}

ParallelData prepare_parallel(const std::vector<const ingest::FeatureMatrix*>& products, Date series_start,
                              const std::vector<std::string>& columns, std::size_t window, std::size_t horizon,
                              const std::vector<pipeline::MinMaxScaler>* scalers) {
  if (products.empty()) throw Error(Errc::empty_input, "parallel model needs at least one product");
  if (scalers && scalers->size() != products.size()) throw Error(Errc::shape, "one scaler per product required");
  for (const auto* p : products) {
    if (p->dates != products.front()->dates) {
      throw Error(Errc::alignment, "series " + p->key.label() + " is not aligned with " +
                                       products.front()->key.label());
    }
  }
  ParallelData data;
  for (std::size_t i = 0; i < products.size(); ++i) {
    data.series.push_back(pipeline::prepare_series(*products[i], columns, series_start, window, horizon,
                                                   scalers ? &(*scalers)[i] : nullptr));
  }

  auto combine = [&](auto member) {
    const auto& first = data.series.front().*member;
    std::vector<pipeline::WindowedSample> out(first.size());
    const auto f = static_cast<Eigen::Index>(columns.size());
    const auto h = static_cast<Eigen::Index>(horizon);
    const auto n = static_cast<Eigen::Index>(data.series.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      auto& s = out[i];
      s.origin = first[i].origin;
      s.input.resize(first[i].input.rows(), f * n);
      s.target.resize(h * n);
      for (Eigen::Index p = 0; p < n; ++p) {
        const auto& src = (data.series[static_cast<std::size_t>(p)].*member)[i];
        s.input.middleCols(p * f, f) = src.input;
        s.target.segment(p * h, h) = src.target;
      }
    }
    return out;
  };
  data.train = combine(&pipeline::PreparedSeries::train);
  data.validation = combine(&pipeline::PreparedSeries::validation);
  data.test = combine(&pipeline::PreparedSeries::test);
  return data;
}

RunResult run_parallel(const std::vector<const ingest::FeatureMatrix*>& products, Date series_start,
                       const FeatureSet& features, const nn::ModelConfig& config) {
  const auto data = prepare_parallel(products, series_start, features.columns(),
                                     static_cast<std::size_t>(config.input_window),
                                     static_cast<std::size_t>(config.horizon));
  auto net = nn::train(config, data.train, data.validation);
  const Eigen::MatrixXd outputs = nn::predict(net.params, data.test);

  RunResult result;
  std::vector<const pipeline::PreparedSeries*> ptrs;
  for (std::size_t p = 0; p < data.series.size(); ++p) {
    const auto& s = data.series[p];
    ptrs.push_back(&s);
    auto forecasts = nn::to_demand_units(outputs, s.scaler, p, static_cast<std::size_t>(config.horizon));
    result.evaluations.push_back(make_evaluation(s, s.test, std::move(forecasts)));
  }
  result.model = wrap(std::move(net), features, ptrs);
  return result;
}

std::vector<SeriesEvaluation> evaluate_model(const nn::TrainedModel& model,
                                             const std::vector<const ingest::FeatureMatrix*>& series,
                                             Date series_start) {
  if (series.size() != model.series.size()) throw Error(Errc::shape, "one feature matrix per model series required");
  const auto& config = model.network.config;
  const auto horizon = static_cast<std::size_t>(config.horizon);
  const auto data = prepare_parallel(series, series_start, model.feature_columns,
                                     static_cast<std::size_t>(config.input_window), horizon, &model.scalers);
  const Eigen::MatrixXd outputs = nn::predict(model.network.params, data.test);
  std::vector<SeriesEvaluation> out;
  for (std::size_t p = 0; p < data.series.size(); ++p) {
    const auto& s = data.series[p];
    out.push_back(make_evaluation(s, s.test, nn::to_demand_units(outputs, s.scaler, p, horizon)));
  }
  return out;
}

std::vector<std::vector<double>> forecast_at(const nn::TrainedModel& model,
                                             const std::vector<const ingest::FeatureMatrix*>& series,
                                             Date origin) {
  if (series.size() != model.series.size()) throw Error(Errc::shape, "one feature matrix per model series required");
  const auto window = static_cast<Eigen::Index>(model.network.config.input_window);
  const auto f = static_cast<Eigen::Index>(model.feature_columns.size());
  Eigen::MatrixXd input(window, f * static_cast<Eigen::Index>(series.size()));
  for (std::size_t p = 0; p < series.size(); ++p) {
    const auto& fm = *series[p];
    const auto it = std::lower_bound(fm.dates.begin(), fm.dates.end(), origin);
    if (it == fm.dates.end() || *it != origin) {
      throw Error(Errc::config, "origin " + format_date(origin) + " is not a sales day of " + fm.key.label());
    }
    const auto row = static_cast<Eigen::Index>(it - fm.dates.begin());
    if (row + 1 < window) {
      throw Error(Errc::config, "origin " + format_date(origin) + " has too little history for " + fm.key.label());
    }
    const Eigen::MatrixXd scaled = pipeline::scale_features(fm, model.feature_columns, model.scalers[p]);
    input.middleCols(static_cast<Eigen::Index>(p) * f, f) = scaled.block(row + 1 - window, 0, window, f);
  }
  const Eigen::VectorXd out = nn::forward(model.network.params, input);
  std::vector<std::vector<double>> forecasts;
  for (std::size_t p = 0; p < series.size(); ++p) {
    forecasts.push_back(nn::to_demand_units(out, model.scalers[p], p,
                                            static_cast<std::size_t>(model.network.config.horizon)).front());
  }
  return forecasts;
}

}  // namespace dfcast::experiments
