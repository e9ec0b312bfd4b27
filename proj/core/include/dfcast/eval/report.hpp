#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dfcast/eval/metrics.hpp"

namespace dfcast::eval {

inline constexpr const char* kEvaluationHeader = "product_id,category,model,lookahead,mae,mmape";
inline constexpr const char* kSummaryHeader = "model,category,overall_mean_mae,mean_mmape";
inline constexpr const char* kBoxplotHeader =
    "model,category,q1,median,q3,whisker_low,whisker_high,n_outliers,outliers";

/// Errors of one model on one series.
struct EvaluationRow {
  std::string product_id;
  std::string category;
  std::string model;
  LookaheadErrors errors;
};

struct SummaryRow {
  std::string model;
  std::string category;
  OverallMeans means;
};

/// Summary per (model, category) plus an "all" category per model, in
/// first-seen model order then category order.
std::vector<SummaryRow> summarize(const std::vector<EvaluationRow>& rows);

struct BoxplotRow {
  std::string model;
  std::string category;
  BoxPlotStats stats;
};

/// Box-plot statistics of per-product mean mMAPE per (model, category).
std::vector<BoxplotRow> boxplots(const std::vector<EvaluationRow>& rows);

/// Fixed-precision numbers so reruns are byte-identical. Each writer emits a
/// leading `# master_seed=<seed>` comment line before the header.
void write_evaluation_csv(std::ostream& out, const std::vector<EvaluationRow>& rows,
                          std::uint64_t seed);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, std::uint64_t seed);
void write_boxplot_csv(std::ostream& out, const std::vector<BoxplotRow>& rows, std::uint64_t seed);

/// Bar chart of overall mean MAE and mean mMAPE per model for one category.
void write_comparison_svg(std::ostream& out, const std::string& title,
                          const std::vector<SummaryRow>& rows);
/// Box plots of per-product mean mMAPE, one per model, for one category.
void write_boxplot_svg(std::ostream& out, const std::string& title,
                       const std::vector<BoxplotRow>& rows);

std::string format_fixed(double value, int digits = 6);

}  // namespace dfcast::eval
