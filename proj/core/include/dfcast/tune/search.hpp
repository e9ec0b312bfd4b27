#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "dfcast/core/kv_config.hpp"
#include "dfcast/nn/params.hpp"
#include "dfcast/pipeline/prepare.hpp"

namespace dfcast::tune {

/// Product-level random-search grid. Fixed fields (window 36, batch 32,
/// 70 epochs, patience 5) are not searched.
struct SearchSpace {
  std::vector<int> lstm_units;
  std::vector<int> n_dense_layers;
  std::vector<int> dense_units;
  std::vector<double> dropout_rate;
  std::vector<double> learning_rate;

  static SearchSpace standard();

  /// True when every searched field of `config` lies on the grid.
  bool contains(const nn::ModelConfig& config) const;
};

/// Draws each dimension uniformly and independently; dense units and the
/// dropout flag are drawn per dense layer.
nn::ModelConfig sample_trial(const SearchSpace& space, std::mt19937_64& rng);

struct Trial {
  std::size_t id = 0;
  nn::ModelConfig config;
  double validation_score = 0.0;  // mean mMAPE on the validation split
  int best_epoch = 0;
  bool diverged = false;
  int rank = 0;  // 1 = best; 0 for diverged trials
};

struct SearchOptions {
  unsigned jobs = 1;
  std::optional<int> max_epochs;  // shortens smoke runs; Table 1 value otherwise
};

/// Samples n_trials configs from a generator seeded with `master_seed`;
/// trial i trains with seed derive_seed(master_seed, i). Returns the
/// non-diverged trials ranked by ascending validation score, followed by the
/// diverged ones. Throws Errc::search_failed when every trial diverges.
std::vector<Trial> random_search(const pipeline::PreparedSeries& series, std::size_t n_trials,
                                 std::uint64_t master_seed, const SearchSpace& space,
                                 const SearchOptions& options = {});

/// Validation mean mMAPE of one config (trains it).
Trial run_trial(const pipeline::PreparedSeries& series, const nn::ModelConfig& config);

inline constexpr const char* kTuningHeader =
    "trial_id,seed,lstm_units,n_dense_layers,dense_units,dropout_flags,dropout_rate,"
    "learning_rate,val_mmape,best_epoch";

/// Rows in trial-id order; list fields are ';'-separated.
void write_tuning_csv(std::ostream& out, std::vector<Trial> trials, std::uint64_t master_seed);

/// Model hyperparameters as `key = value` lines, readable by read_model_config.
void write_model_config(std::ostream& out, const nn::ModelConfig& config);
nn::ModelConfig read_model_config(const KeyValueConfig& kv, nn::ModelConfig defaults = {});

}  // namespace dfcast::tune
