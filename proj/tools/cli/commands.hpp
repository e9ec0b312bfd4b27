#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "cli/run_config.hpp"

namespace dfcast::cli {

/// Writes sales.csv, holidays.csv and products.csv to `out`.
void cmd_synth(const KeyValueConfig& kv, const std::filesystem::path& out, std::optional<std::uint64_t> seed);

/// One model file and one history CSV per trained model.
void cmd_train(const RunConfig& rc, std::ostream& log);

/// A tuning CSV and best-config file per series.
void cmd_tune(const RunConfig& rc, std::ostream& log);

/// evaluation.csv, summary.csv, boxplots.csv and SVG plots per category.
void cmd_evaluate(const RunConfig& rc, std::ostream& log);

/// forecast.csv with six rows per model series.
void cmd_forecast(const RunConfig& rc, std::ostream& log);

}  // namespace dfcast::cli
