#include "dfcast/eval/report.hpp"

#include <algorithm>
#include <cstdio>

namespace dfcast::eval {
namespace {

template <class Key>
std::vector<Key> first_seen(const std::vector<EvaluationRow>& rows, Key EvaluationRow::*field) {
  std::vector<Key> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
  }
  return out;
}

// Categories in sorted order followed by "all".
std::vector<std::string> category_order(const std::vector<EvaluationRow>& rows) {
  auto cats = first_seen(rows, &EvaluationRow::category);
  std::sort(cats.begin(), cats.end());
  cats.erase(std::remove(cats.begin(), cats.end(), "all"), cats.end());
  cats.push_back("all");
  return cats;
}

}  // namespace

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  std::string s = buf;
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::vector<SummaryRow> summarize(const std::vector<EvaluationRow>& rows) {
  std::vector<SummaryRow> out;
  for (const auto& model : first_seen(rows, &EvaluationRow::model)) {
    for (const auto& cat : category_order(rows)) {
      std::vector<LookaheadErrors> selected;
      for (const auto& r : rows) {
        if (r.model == model && (cat == "all" || r.category == cat)) selected.push_back(r.errors);
      }
      if (!selected.empty()) out.push_back({model, cat, overall_means(selected)});
    }
  }
  return out;
}

std::vector<BoxplotRow> boxplots(const std::vector<EvaluationRow>& rows) {
  std::vector<BoxplotRow> out;
  for (const auto& model : first_seen(rows, &EvaluationRow::model)) {
    for (const auto& cat : category_order(rows)) {
      std::vector<std::pair<std::string, double>> values;
      for (const auto& r : rows) {
        if (r.model == model && (cat == "all" || r.category == cat)) {
          values.emplace_back(r.product_id, r.errors.mean_mmape());
        }
      }
      if (!values.empty()) out.push_back({model, cat, boxplot_stats(values)});
    }
  }
  return out;
}

void write_evaluation_csv(std::ostream& out, const std::vector<EvaluationRow>& rows,
                          std::uint64_t seed) {
  out << "# master_seed=" << seed << '\n' << kEvaluationHeader << '\n';
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < kLookaheads; ++k) {
      out << r.product_id << ',' << r.category << ',' << r.model << ',' << (k + 1) << ','
          << format_fixed(r.errors.mae[k]) << ',' << format_fixed(r.errors.mmape[k]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows, std::uint64_t seed) {
  out << "# master_seed=" << seed << '\n' << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.model << ',' << r.category << ',' << format_fixed(r.means.mae) << ','
        << format_fixed(r.means.mmape) << '\n';
  }
}

void write_boxplot_csv(std::ostream& out, const std::vector<BoxplotRow>& rows, std::uint64_t seed) {
  out << "# master_seed=" << seed << '\n' << kBoxplotHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out << r.model << ',' << r.category << ',' << format_fixed(s.q1) << ',' << format_fixed(s.median)
        << ',' << format_fixed(s.q3) << ',' << format_fixed(s.whisker_low) << ','
        << format_fixed(s.whisker_high) << ',' << s.outliers.size() << ',';
    for (std::size_t i = 0; i < s.outliers.size(); ++i) {
      out << (i ? ";" : "") << s.outliers[i].first << ':' << format_fixed(s.outliers[i].second);
    }
    out << '\n';
  }
}

}  // namespace dfcast::eval
