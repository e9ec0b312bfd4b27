#include <algorithm>
#include <cmath>

#include "dfcast/eval/report.hpp"

namespace dfcast::eval {
namespace {

constexpr double kWidth = 720;
constexpr double kPanelHeight = 260;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return format_fixed(v, 2); }

double nice_max(double v) {
  if (!(v > 0)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (step * mag >= v) return step * mag;
  }
  return 10.0 * mag;
}

void axis(std::ostream& out, double top, double height, double max_value, const std::string& label) {
  const double x0 = kLeft;
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x0) << "\" y2=\""
      << num(top + height) << "\" stroke=\"#333\"/>\n";
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(top + height) << "\" x2=\""
      << num(kWidth - kRight) << "\" y2=\"" << num(top + height) << "\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = max_value * i / 4.0;
    const double y = top + height - height * i / 4.0;
    out << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_fixed(v, 3) << "</text>\n";
  }
  out << "<text x=\"16\" y=\"" << num(top + height / 2) << "\" font-size=\"12\" transform=\"rotate(-90 16 "
      << num(top + height / 2) << ")\" text-anchor=\"middle\">" << esc(label) << "</text>\n";
}

}  // namespace

void write_comparison_svg(std::ostream& out, const std::string& title,
                          const std::vector<SummaryRow>& rows) {
  const double height = kTop + 2 * (kPanelHeight + 50);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">"
      << esc(title) << "</text>\n";
  const double plot_w = kWidth - kLeft - kRight;
  for (int panel = 0; panel < 2; ++panel) {
    const double top = kTop + panel * (kPanelHeight + 50);
    double vmax = 0;
    for (const auto& r : rows) vmax = std::max(vmax, panel == 0 ? r.means.mae : r.means.mmape);
    vmax = nice_max(vmax);
    axis(out, top, kPanelHeight, vmax, panel == 0 ? "overall mean MAE" : "mean mMAPE");
    const double slot = rows.empty() ? plot_w : plot_w / static_cast<double>(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double v = panel == 0 ? rows[i].means.mae : rows[i].means.mmape;
      const double h = kPanelHeight * v / vmax;
      const double x = kLeft + slot * static_cast<double>(i) + slot * 0.15;
      out << "<rect x=\"" << num(x) << "\" y=\"" << num(top + kPanelHeight - h) << "\" width=\""
          << num(slot * 0.7) << "\" height=\"" << num(h) << "\" fill=\""
          << (rows[i].model.rfind("LSTM", 0) == 0 ? "#c0392b" : "#5d6d7e") << "\"/>\n";
      out << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << num(top + kPanelHeight + 16)
          << "\" font-size=\"11\" text-anchor=\"middle\">" << esc(rows[i].model) << "</text>\n";
      out << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << num(top + kPanelHeight - h - 4)
          << "\" font-size=\"10\" text-anchor=\"middle\">" << format_fixed(v, 3) << "</text>\n";
    }
  }
  out << "</svg>\n";
}

void write_boxplot_svg(std::ostream& out, const std::string& title,
                       const std::vector<BoxplotRow>& rows) {
  const double height = kTop + kPanelHeight + 50;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">"
      << esc(title) << "</text>\n";
  double vmax = 0;
  for (const auto& r : rows) {
    vmax = std::max(vmax, r.stats.whisker_high);
    for (const auto& o : r.stats.outliers) vmax = std::max(vmax, o.second);
  }
  vmax = nice_max(vmax);
  axis(out, kTop, kPanelHeight, vmax, "product mean mMAPE");
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = rows.empty() ? plot_w : plot_w / static_cast<double>(rows.size());
  auto y_of = [&](double v) { return kTop + kPanelHeight - kPanelHeight * v / vmax; };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& s = rows[i].stats;
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double half = slot * 0.25;
    out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(y_of(s.whisker_low)) << "\" x2=\"" << num(cx)
        << "\" y2=\"" << num(y_of(s.whisker_high)) << "\" stroke=\"#333\"/>\n";
    out << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(y_of(s.q3)) << "\" width=\""
        << num(2 * half) << "\" height=\"" << num(std::max(0.5, y_of(s.q1) - y_of(s.q3)))
        << "\" fill=\"#d6eaf8\" stroke=\"#333\"/>\n";
    out << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(y_of(s.median)) << "\" x2=\""
        << num(cx + half) << "\" y2=\"" << num(y_of(s.median)) << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    for (double w : {s.whisker_low, s.whisker_high}) {
      out << "<line x1=\"" << num(cx - half / 2) << "\" y1=\"" << num(y_of(w)) << "\" x2=\""
          << num(cx + half / 2) << "\" y2=\"" << num(y_of(w)) << "\" stroke=\"#333\"/>\n";
    }
    for (const auto& o : s.outliers) {
      out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y_of(o.second))
          << "\" r=\"3\" fill=\"none\" stroke=\"#333\"><title>" << esc(o.first) << "</title></circle>\n";
    }
    out << "<text x=\"" << num(cx) << "\" y=\"" << num(kTop + kPanelHeight + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << esc(rows[i].model) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace dfcast::eval
