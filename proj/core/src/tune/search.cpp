#include "dfcast/tune/search.hpp"

#include <algorithm>
#include <cmath>

#include "dfcast/core/parallel.hpp"
#include "dfcast/error.hpp"
#include "dfcast/eval/metrics.hpp"
#include "dfcast/eval/report.hpp"
#include "dfcast/nn/forecast.hpp"
#include "dfcast/nn/train.hpp"

namespace dfcast::tune {
namespace {

template <class T>
const T& pick(const std::vector<T>& grid, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dist(0, grid.size() - 1);
  return grid[dist(rng)];
}

bool on_grid(const std::vector<double>& grid, double v) {
  return std::any_of(grid.begin(), grid.end(),
                     [&](double g) { return std::abs(g - v) <= 1e-12 * std::max(1.0, std::abs(g)); });
}

template <class T>
std::string join(const std::vector<T>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(static_cast<long long>(xs[i]));
  }
  return out;
}

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

SearchSpace SearchSpace::standard() {
  SearchSpace s;
  for (int u = 10; u <= 100; u += 10) {
    s.lstm_units.push_back(u);
    s.dense_units.push_back(u);
  }
  s.n_dense_layers = {1, 2, 3};
  for (int k = 1; k <= 9; ++k) s.dropout_rate.push_back(k / 10.0);
  s.learning_rate = {1e-2, 1e-3, 1e-4};
  return s;
}

bool SearchSpace::contains(const nn::ModelConfig& c) const {
  auto has = [](const std::vector<int>& g, int v) { return std::find(g.begin(), g.end(), v) != g.end(); };
  if (!has(lstm_units, c.lstm_units) || !has(n_dense_layers, c.n_dense_layers())) return false;
  if (c.dropout_enabled.size() != c.dense_units.size()) return false;
  for (int u : c.dense_units) {
    if (!has(dense_units, u)) return false;
  }
  return on_grid(dropout_rate, c.dropout_rate) && on_grid(learning_rate, c.learning_rate);
}

nn::ModelConfig sample_trial(const SearchSpace& space, std::mt19937_64& rng) {
  nn::ModelConfig c;
  c.lstm_units = pick(space.lstm_units, rng);
  const int layers = pick(space.n_dense_layers, rng);
  c.dense_units.clear();
  c.dropout_enabled.clear();
  std::bernoulli_distribution coin(0.5);
  for (int l = 0; l < layers; ++l) {
    c.dense_units.push_back(pick(space.dense_units, rng));
    c.dropout_enabled.push_back(coin(rng));
  }
  c.dropout_rate = pick(space.dropout_rate, rng);
  c.learning_rate = pick(space.learning_rate, rng);
  c.batch_size = 32;
  c.max_epochs = 70;
  c.patience = 5;
  c.input_window = 36;
  c.horizon = 6;
  return c;
}

Trial run_trial(const pipeline::PreparedSeries& series, const nn::ModelConfig& config) {
  Trial t;
  t.config = config;
  try {
    const auto net = nn::train(config, series.train, series.validation);
    const auto forecasts = nn::forecast_series(net.params, series, series.validation);
    const auto origins = nn::origins_of(series.validation);
    const auto errors = eval::lookahead_errors(origins, forecasts, origins,
                                               nn::actuals_for(series, series.validation));
    t.validation_score = errors.mean_mmape();
    t.best_epoch = net.best_epoch;
    t.diverged = !std::isfinite(t.validation_score);
  } catch (const TrainingDiverged&) {
    t.diverged = true;
  }
  return t;
}

std::vector<Trial> random_search(const pipeline::PreparedSeries& series, std::size_t n_trials,
                                 std::uint64_t master_seed, const SearchSpace& space,
                                 const SearchOptions& options) {
  if (n_trials == 0) throw Error(Errc::config, "random_search: n_trials must be >= 1");
  std::mt19937_64 rng(master_seed);
  std::vector<nn::ModelConfig> configs;
  for (std::size_t i = 0; i < n_trials; ++i) {
    auto c = sample_trial(space, rng);
    c.rng_seed = derive_seed(master_seed, i);
    if (options.max_epochs) c.max_epochs = *options.max_epochs;
    configs.push_back(std::move(c));
  }
  std::vector<Trial> trials(n_trials);
  parallel_for(n_trials, options.jobs, [&](std::size_t i) {
    trials[i] = run_trial(series, configs[i]);
    trials[i].id = i;
  });
  std::stable_sort(trials.begin(), trials.end(), [](const Trial& a, const Trial& b) {
    if (a.diverged != b.diverged) return !a.diverged;
    return !a.diverged && a.validation_score < b.validation_score;
  });
  int rank = 0;
  for (auto& t : trials) t.rank = t.diverged ? 0 : ++rank;
  if (rank == 0) throw Error(Errc::search_failed, "every trial diverged for " + series.key.label());
  return trials;
}

void write_tuning_csv(std::ostream& out, std::vector<Trial> trials, std::uint64_t master_seed) {
  std::sort(trials.begin(), trials.end(), [](const Trial& a, const Trial& b) { return a.id < b.id; });
  out << "# master_seed=" << master_seed << '\n' << kTuningHeader << '\n';
  for (const auto& t : trials) {
    const auto& c = t.config;
    std::vector<int> flags(c.dropout_enabled.begin(), c.dropout_enabled.end());
    out << t.id << ',' << c.rng_seed << ',' << c.lstm_units << ',' << c.n_dense_layers() << ','
        << join(c.dense_units, ';') << ',' << join(flags, ';') << ',' << eval::format_fixed(c.dropout_rate, 1)
        << ',' << short_number(c.learning_rate) << ','
        << (t.diverged ? std::string("nan") : eval::format_fixed(t.validation_score)) << ','
        << t.best_epoch << '\n';
  }
}

void write_model_config(std::ostream& out, const nn::ModelConfig& c) {
  std::vector<int> flags(c.dropout_enabled.begin(), c.dropout_enabled.end());
  out << "lstm_units = " << c.lstm_units << '\n'
      << "dense_units = " << join(c.dense_units, ',') << '\n'
      << "dropout_enabled = " << join(flags, ',') << '\n'
      << "dropout_rate = " << exact(c.dropout_rate) << '\n'
      << "learning_rate = " << exact(c.learning_rate) << '\n'
      << "batch_size = " << c.batch_size << '\n'
      << "max_epochs = " << c.max_epochs << '\n'
      << "patience = " << c.patience << '\n'
      << "input_window = " << c.input_window << '\n'
      << "horizon = " << c.horizon << '\n'
      << "rng_seed = " << c.rng_seed << '\n';
}

nn::ModelConfig read_model_config(const KeyValueConfig& kv, nn::ModelConfig c) {
  c.lstm_units = static_cast<int>(kv.get_int("lstm_units", c.lstm_units));
  if (kv.has("dense_units")) {
    c.dense_units.clear();
    for (double u : kv.get_doubles("dense_units", {})) c.dense_units.push_back(static_cast<int>(u));
    if (!kv.has("dropout_enabled")) c.dropout_enabled.assign(c.dense_units.size(), false);
  }
  if (kv.has("dropout_enabled")) {
    c.dropout_enabled.clear();
    for (double f : kv.get_doubles("dropout_enabled", {})) c.dropout_enabled.push_back(f != 0.0);
  }
  c.dropout_rate = kv.get_double("dropout_rate", c.dropout_rate);
  c.learning_rate = kv.get_double("learning_rate", c.learning_rate);
  c.batch_size = static_cast<int>(kv.get_int("batch_size", c.batch_size));
  c.max_epochs = static_cast<int>(kv.get_int("max_epochs", c.max_epochs));
  c.patience = static_cast<int>(kv.get_int("patience", c.patience));
  c.input_window = static_cast<int>(kv.get_int("input_window", c.input_window));
  c.horizon = static_cast<int>(kv.get_int("horizon", c.horizon));
  c.rng_seed = kv.get_uint("rng_seed", c.rng_seed);
  c.validate();
  return c;
}

}  // namespace dfcast::tune
