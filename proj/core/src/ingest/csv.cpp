#include "dfcast/ingest/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "dfcast/core/kv_config.hpp"
#include "dfcast/error.hpp"

namespace dfcast::ingest {
namespace {

// Iterates data lines after validating the header; yields (line number, fields).
template <class Fn>
void for_each_row(std::istream& in, std::string_view header, std::size_t columns, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw ParseError(lineno, "expected header '" + std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != columns) {
      throw ParseError(lineno, "expected " + std::to_string(columns) + " columns, got " +
                                   std::to_string(fields.size()));
    }
    fn(lineno, fields);
  }
  if (!seen_header) throw ParseError(lineno, "missing header");
}

double parse_number(std::size_t lineno, const std::string& field, const char* what) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
      !std::isfinite(out)) {
    throw ParseError(lineno, std::string("unparsable ") + what + " '" + field + "'");
  }
  return out;
}

Date parse_date_field(std::size_t lineno, const std::string& field) {
  auto d = parse_date(field);
  if (!d) throw ParseError(lineno, "bad date '" + field + "'");
  return *d;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return in;
}

}  // namespace

std::size_t SalesTable::record_count() const {
  std::size_t n = 0;
  for (const auto& s : series) n += s.records.size();
  return n;
}

const SalesSeries* SalesTable::find(const SeriesKey& key) const {
  auto it = std::lower_bound(series.begin(), series.end(), key,
                             [](const SalesSeries& s, const SeriesKey& k) { return s.key < k; });
  return it != series.end() && it->key == key ? &*it : nullptr;
}

Date SalesTable::first_date() const {
  if (record_count() == 0) throw Error(Errc::empty_input, "empty sales table");
  Date d = Date::max();
  for (const auto& s : series) {
    if (!s.records.empty()) d = std::min(d, s.records.front().date);
  }
  return d;
}

Date SalesTable::last_date() const {
  if (record_count() == 0) throw Error(Errc::empty_input, "empty sales table");
  Date d = Date::min();
  for (const auto& s : series) {
    if (!s.records.empty()) d = std::max(d, s.records.back().date);
  }
  return d;
}

SalesTable group_records(std::vector<SalesRecord> records) {
  std::map<SeriesKey, std::vector<SalesRecord>> groups;
  for (auto& r : records) {
    SeriesKey key{r.product, r.warehouse};
    groups[key].push_back(std::move(r));
  }
  SalesTable table;
  for (auto& [key, recs] : groups) {
    std::stable_sort(recs.begin(), recs.end(),
                     [](const SalesRecord& a, const SalesRecord& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < recs.size(); ++i) {
      if (recs[i].date == recs[i - 1].date) {
        throw Error(Errc::duplicate_record, "duplicate record for " + key.label() + " on " +
                                                format_date(recs[i].date));
      }
    }
    table.series.push_back(SalesSeries{key, std::move(recs)});
  }
  return table;
}

SalesTable read_sales_csv(std::istream& in) {
  std::vector<SalesRecord> records;
  for_each_row(in, kSalesHeader, 7, [&](std::size_t lineno, const std::vector<std::string>& f) {
    if (f[1].empty() || f[2].empty()) throw ParseError(lineno, "empty product or warehouse id");
    SalesRecord r{parse_date_field(lineno, f[0]), ProductId{f[1]}, WarehouseId{f[2]}};
    r.demand = parse_number(lineno, f[3], "demand");
    if (r.demand < 0) throw ParseError(lineno, "negative demand");
    if (!f[4].empty()) {
      const double price = parse_number(lineno, f[4], "price");
      if (price <= 0) throw ParseError(lineno, "price must be positive");
      r.price = price;
    }
    if (f[5] == "1") {
      r.promotion = true;
    } else if (f[5] != "0") {
      throw ParseError(lineno, "promotion must be 0 or 1");
    }
    r.known_orders = parse_number(lineno, f[6], "known_orders");
    if (r.known_orders < 0) throw ParseError(lineno, "negative known_orders");
    records.push_back(std::move(r));
  });
  return group_records(std::move(records));
}

SalesTable load_sales_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_sales_csv(in);
}

std::set<Date> read_holidays_csv(std::istream& in) {
  std::set<Date> out;
  for_each_row(in, kHolidayHeader, 1, [&](std::size_t lineno, const std::vector<std::string>& f) {
    out.insert(parse_date_field(lineno, f[0]));
  });
  return out;
}

std::set<Date> load_holidays_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_holidays_csv(in);
}

std::vector<ProductInfo> read_product_csv(std::istream& in) {
  std::vector<ProductInfo> out;
  for_each_row(in, kProductHeader, 3, [&](std::size_t lineno, const std::vector<std::string>& f) {
    if (f[0].empty()) throw ParseError(lineno, "empty product id");
    out.push_back(ProductInfo{ProductId{f[0]}, f[1], parse_number(lineno, f[2], "base_demand")});
  });
  return out;
}

std::vector<ProductInfo> load_product_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_product_csv(in);
}

StoreCalendar calendar_for(const SalesTable& table, std::set<Date> holidays) {
  return StoreCalendar(table.first_date(), table.last_date(), std::move(holidays));
}

}  // namespace dfcast::ingest
