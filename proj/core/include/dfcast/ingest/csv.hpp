#pragma once

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "dfcast/core/calendar.hpp"
#include "dfcast/core/sales.hpp"

namespace dfcast::ingest {

inline constexpr const char* kSalesHeader =
    "date,product_id,warehouse_id,demand,price,promotion,known_orders";
inline constexpr const char* kHolidayHeader = "date";
inline constexpr const char* kProductHeader = "product_id,category,base_demand";

struct SalesSeries {
  SeriesKey key;
  std::vector<SalesRecord> records;  // strictly increasing dates
};

/// Sales grouped by (product, warehouse); groups ordered by key.
struct SalesTable {
  std::vector<SalesSeries> series;

  std::size_t record_count() const;
  const SalesSeries* find(const SeriesKey& key) const;
  Date first_date() const;
  Date last_date() const;
};

/// Groups and sorts raw records; throws Errc::duplicate_record on a repeated key.
SalesTable group_records(std::vector<SalesRecord> records);

/// Lines starting with '#' are treated as comments and skipped.
SalesTable read_sales_csv(std::istream& in);
SalesTable load_sales_csv(const std::filesystem::path& path);

std::set<Date> read_holidays_csv(std::istream& in);
std::set<Date> load_holidays_csv(const std::filesystem::path& path);

struct ProductInfo {
  ProductId id;
  std::string category;
  double base_demand = 0.0;
};

std::vector<ProductInfo> read_product_csv(std::istream& in);
std::vector<ProductInfo> load_product_csv(const std::filesystem::path& path);

/// Calendar covering the table's full date span.
StoreCalendar calendar_for(const SalesTable& table, std::set<Date> holidays);

}  // namespace dfcast::ingest
