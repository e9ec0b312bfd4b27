#include "cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "cli/dataset.hpp"
#include "dfcast/core/parallel.hpp"
#include "dfcast/error.hpp"
#include "dfcast/eval/report.hpp"
#include "dfcast/experiments/plan.hpp"
#include "dfcast/experiments/runners.hpp"
#include "dfcast/nn/forecast.hpp"
#include "dfcast/nn/model_io.hpp"
#include "dfcast/synth/generator.hpp"
#include "dfcast/tune/search.hpp"

namespace dfcast::cli {
namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw Error(Errc::io, "failed writing " + path.string());
}

std::string stem_of(const SeriesKey& key) { return key.product.str() + "_" + key.warehouse.str(); }

void write_history(std::ostream& out, const nn::TrainedNetwork& net, std::uint64_t seed) {
  out << "# master_seed=" << seed << "\nepoch,train_loss,val_loss\n";
  for (const auto& r : net.history) {
    out << r.epoch << ',' << eval::format_fixed(r.train_loss, 10) << ',' << eval::format_fixed(r.val_loss, 10)
        << '\n';
  }
}

void save_run(const RunConfig& rc, const nn::TrainedModel& model, const std::string& stem, std::ostream& log) {
  const fs::path model_path = rc.out_dir / ("model_" + stem + ".txt");
  write_file(model_path, [&](std::ostream& o) { nn::save_model(model, o); });
  write_file(rc.out_dir / ("history_" + stem + ".csv"),
             [&](std::ostream& o) { write_history(o, model.network, rc.seed); });
  log << "trained " << model.name << " for " << stem << ": best epoch " << model.network.best_epoch << " of "
      << model.network.history.size() << " -> " << model_path.string() << '\n';
}

nn::ModelConfig seeded(const RunConfig& rc, std::size_t index) {
  nn::ModelConfig c = rc.model;
  c.rng_seed = derive_seed(rc.seed, index);
  return c;
}

std::string model_name(const std::string& variant) { return variant == "single" ? "LSTM" : "LSTM_" + variant; }

void train_each(const RunConfig& rc, const Dataset& ds, const std::vector<experiments::FeatureSet>& sets,
                const std::string& name, std::ostream& log) {
  std::vector<experiments::RunResult> results(ds.series.size());
  parallel_for(ds.series.size(), rc.jobs, [&](std::size_t i) {
    results[i] = experiments::run_single(ds.series[i], ds.start, sets[i], seeded(rc, i));
  });
  for (std::size_t i = 0; i < results.size(); ++i) {
    results[i].model.name = name;
    save_run(rc, results[i].model, stem_of(ds.series[i].key), log);
  }
}

std::vector<experiments::FeatureSet> feature_search(const RunConfig& rc, const Dataset& ds, std::ostream& log) {
  std::vector<experiments::FeatureSet> candidates;
  for (const auto& n : rc.raw.get_strings("feature_sets", {})) candidates.push_back(experiments::feature_set_by_name(n));
  if (candidates.empty()) candidates = experiments::named_feature_sets();
  std::vector<experiments::CategorizedSeries> tagged;
  for (const auto& s : ds.series) tagged.push_back({&s, ds.category_of(s.key)});
  nn::ModelConfig config = seeded(rc, 0);
  const auto result = experiments::run_feature_search(tagged, ds.start, candidates, config, rc.jobs);
  write_file(rc.out_dir / "feature_search.csv", [&](std::ostream& o) {
    o << "# master_seed=" << rc.seed << "\ncategory,feature_set,val_mmape,best\n";
    for (const auto& row : result.table) {
      const bool best = result.best.at(row.category).name() == row.feature_set;
      o << row.category << ',' << row.feature_set << ',' << eval::format_fixed(row.validation_mmape) << ','
        << (best ? 1 : 0) << '\n';
    }
  });
  std::vector<experiments::FeatureSet> chosen;
  for (const auto& s : tagged) chosen.push_back(result.best.at(s.category));
  for (const auto& [category, set] : result.best) log << "best feature set for " << category << ": " << set.name() << '\n';
  return chosen;
}

}  // namespace

void cmd_synth(const KeyValueConfig& kv, const fs::path& out, std::optional<std::uint64_t> seed) {
  auto config = synth::SynthConfig::from_config(kv);
  if (seed) config.seed = *seed;
  synth::write_dataset(synth::generate(config), out, config.seed);
}

void cmd_train(const RunConfig& rc, std::ostream& log) {
  const auto variant = experiments::parse_variant(rc.variant);
  if (!variant && rc.variant != "single") throw Error(Errc::config, "unknown variant: " + rc.variant);
  const std::string name = model_name(rc.variant);

  if (rc.variant == "single" || *variant == experiments::Variant::univariate ||
      *variant == experiments::Variant::known_orders) {
    const Dataset ds = load_dataset(rc);
    const auto set = rc.variant == "single"                            ? experiments::feature_set_by_name(rc.feature_set)
                     : *variant == experiments::Variant::univariate ? experiments::univariate_set()
                                                                      : experiments::known_orders_set();
    train_each(rc, ds, std::vector(ds.series.size(), set), name, log);
    return;
  }
  switch (*variant) {
    case experiments::Variant::feature_search: {
      const Dataset ds = load_dataset(rc);
      train_each(rc, ds, feature_search(rc, ds, log), name, log);
      return;
    }
    case experiments::Variant::parallel: {
      const Dataset ds = load_dataset(rc);
      if (ds.series.size() < 2) throw Error(Errc::config, "parallel variant needs at least two series");
      std::vector<const ingest::FeatureMatrix*> products;
      for (const auto& s : ds.series) products.push_back(&s);
      auto result = experiments::run_parallel(products, ds.start, experiments::feature_set_by_name(rc.feature_set),
                                              seeded(rc, 0));
      result.model.name = name;
      save_run(rc, result.model, "parallel", log);
      return;
    }
    case experiments::Variant::pretrain: {
      const Dataset all = load_dataset(rc, false);
      const std::string target_wh =
          rc.warehouse.empty() ? all.series.front().key.warehouse.str() : rc.warehouse;
      const auto set = experiments::feature_set_by_name(rc.feature_set);
      std::vector<const ingest::FeatureMatrix*> targets;
      for (const auto& s : all.series) {
        const auto& pf = rc.product_filter;
        if (s.key.warehouse.str() != target_wh) continue;
        if (!pf.empty() && std::find(pf.begin(), pf.end(), s.key.product.str()) == pf.end()) continue;
        targets.push_back(&s);
      }
      if (targets.empty()) throw Error(Errc::config, "no series in target warehouse " + target_wh);
      std::vector<experiments::RunResult> results(targets.size());
      parallel_for(targets.size(), rc.jobs, [&](std::size_t i) {
        std::vector<ingest::FeatureMatrix> related;
        for (const auto& s : all.series) {
          if (s.key.product == targets[i]->key.product && s.key.warehouse != targets[i]->key.warehouse) {
            related.push_back(s);
          }
        }
        results[i] = experiments::run_pretrain(*targets[i], related, all.start, set, seeded(rc, i),
                                               rc.spearman_threshold);
      });
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (results[i].used_fallback) {
          log << "warning: no related series passed the correlation filter for " << targets[i]->key.label()
              << "; trained without pretraining\n";
        }
        results[i].model.name = name;
        save_run(rc, results[i].model, stem_of(targets[i]->key), log);
      }
      return;
    }
    default:
      throw Error(Errc::config, "unsupported variant: " + rc.variant);
  }
}

void cmd_tune(const RunConfig& rc, std::ostream& log) {
  const Dataset ds = load_dataset(rc);
  const auto set = experiments::feature_set_by_name(rc.feature_set);
  tune::SearchOptions options;
  options.jobs = rc.jobs;
  options.max_epochs = rc.tune_max_epochs;
  for (const auto& fm : ds.series) {
    const auto prepared = pipeline::prepare_series(fm, set.columns(), ds.start);
    const auto trials = tune::random_search(prepared, rc.n_trials, rc.seed, tune::SearchSpace::standard(), options);
    const std::string stem = stem_of(fm.key);
    write_file(rc.out_dir / ("tuning_" + stem + ".csv"),
               [&](std::ostream& o) { tune::write_tuning_csv(o, trials, rc.seed); });
    write_file(rc.out_dir / ("best_config_" + stem + ".txt"), [&](std::ostream& o) {
      o << "# master_seed=" << rc.seed << "\nfeature_set = " << set.name() << '\n';
      tune::write_model_config(o, trials.front().config);
    });
    log << "tuned " << stem << ": best validation mMAPE " << eval::format_fixed(trials.front().validation_score)
        << " (trial " << trials.front().id << ")\n";
  }
}

void cmd_evaluate(const RunConfig& rc, std::ostream& log) {
  const Dataset ds = load_dataset(rc);
  std::vector<eval::EvaluationRow> rows;

  for (const auto& path : rc.models) {
    const auto model = nn::load_model(fs::path(path));
    std::vector<const ingest::FeatureMatrix*> series;
    for (const auto& key : model.series) {
      const auto* fm = ds.find(key);
      if (!fm) throw Error(Errc::config, "model " + path + " covers " + key.label() + ", absent from the data");
      series.push_back(fm);
    }
    for (const auto& ev : experiments::evaluate_model(model, series, ds.start)) {
      rows.push_back({ds.label(ev.key), ds.category_of(ev.key), model.name, ev.errors});
    }
  }

  struct Task {
    std::size_t series;
    std::string tag;
  };
  std::vector<Task> tasks;
  for (const auto& tag : rc.baselines) {
    if (tag != "ORACLE" && !baselines::parse_baseline_tag(tag)) throw Error(Errc::config, "unknown baseline: " + tag);
    for (std::size_t i = 0; i < ds.series.size(); ++i) tasks.push_back({i, tag});
  }
  const auto set = experiments::feature_set_by_name(rc.feature_set);
  std::vector<eval::LookaheadErrors> results(tasks.size());
  parallel_for(tasks.size(), rc.jobs, [&](std::size_t t) {
    const auto& fm = ds.series[tasks[t].series];
    const auto prepared = pipeline::prepare_series(fm, set.columns(), ds.start);
    if (tasks[t].tag == "ORACLE") {
      const auto actuals = nn::actuals_for(prepared, prepared.test);
      const auto origins = nn::origins_of(prepared.test);
      results[t] = eval::lookahead_errors(origins, actuals, origins, actuals);
      return;
    }
    baselines::BaselineOptions options;
    options.seed = derive_seed(rc.seed, t);
    results[t] = experiments::evaluate_baseline(*baselines::parse_baseline_tag(tasks[t].tag), prepared, options).errors;
  });
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& key = ds.series[tasks[t].series].key;
    rows.push_back({ds.label(key), ds.category_of(key), tasks[t].tag, results[t]});
  }
  if (rows.empty()) throw Error(Errc::config, "nothing to evaluate: give model files or baselines");

  const auto summary = eval::summarize(rows);
  const auto boxes = eval::boxplots(rows);
  write_file(rc.out_dir / "evaluation.csv", [&](std::ostream& o) { eval::write_evaluation_csv(o, rows, rc.seed); });
  write_file(rc.out_dir / "summary.csv", [&](std::ostream& o) { eval::write_summary_csv(o, summary, rc.seed); });
  write_file(rc.out_dir / "boxplots.csv", [&](std::ostream& o) { eval::write_boxplot_csv(o, boxes, rc.seed); });

  std::set<std::string> categories;
  for (const auto& s : summary) categories.insert(s.category);
  for (const auto& category : categories) {
    std::vector<eval::SummaryRow> srows;
    for (const auto& s : summary) {
      if (s.category == category) srows.push_back(s);
    }
    std::vector<eval::BoxplotRow> brows;
    for (const auto& b : boxes) {
      if (b.category == category) brows.push_back(b);
    }
    write_file(rc.out_dir / ("comparison_" + category + ".svg"),
               [&](std::ostream& o) { eval::write_comparison_svg(o, "Overall mean errors: " + category, srows); });
    write_file(rc.out_dir / ("boxplot_" + category + ".svg"),
               [&](std::ostream& o) { eval::write_boxplot_svg(o, "Mean mMAPE per product: " + category, brows); });
  }
  for (const auto& s : summary) {
    if (s.category != "all") continue;
    log << s.model << ": mean MAE " << eval::format_fixed(s.means.mae) << ", mean mMAPE "
        << eval::format_fixed(s.means.mmape) << '\n';
  }
}

void cmd_forecast(const RunConfig& rc, std::ostream& log) {
  if (rc.models.empty()) throw Error(Errc::config, "forecast needs a model file");
  const auto origin = parse_date(rc.origin);
  if (!origin) throw Error(Errc::config, "forecast needs an origin date (YYYY-MM-DD), got '" + rc.origin + "'");
  const Dataset ds = load_dataset(rc, false);
  std::vector<std::pair<SeriesKey, std::vector<double>>> rows;
  for (const auto& path : rc.models) {
    const auto model = nn::load_model(fs::path(path));
    std::vector<const ingest::FeatureMatrix*> series;
    for (const auto& key : model.series) {
      const auto* fm = ds.find(key);
      if (!fm) throw Error(Errc::config, "model " + path + " covers " + key.label() + ", absent from the data");
      series.push_back(fm);
    }
    const auto forecasts = experiments::forecast_at(model, series, *origin);
    for (std::size_t i = 0; i < forecasts.size(); ++i) rows.emplace_back(model.series[i], forecasts[i]);
  }
  const fs::path path = rc.out_dir / "forecast.csv";
  write_file(path, [&](std::ostream& o) {
    o << "# master_seed=" << rc.seed << "\nproduct_id,warehouse_id,origin_date,lookahead,forecast\n";
    for (const auto& [key, values] : rows) {
      for (std::size_t k = 0; k < values.size(); ++k) {
        o << key.product.str() << ',' << key.warehouse.str() << ',' << format_date(*origin) << ',' << k + 1 << ','
          << eval::format_fixed(values[k]) << '\n';
      }
    }
  });
  log << "wrote " << rows.size() * 6 << " forecasts to " << path.string() << '\n';
}

}  // namespace dfcast::cli
