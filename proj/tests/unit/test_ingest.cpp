#include <doctest.h>

#include <algorithm>
#include <functional>
#include <sstream>

#include "dfcast/error.hpp"
#include "dfcast/ingest/csv.hpp"
#include "dfcast/ingest/features.hpp"
#include "helpers.hpp"

using namespace dfcast;
using namespace dfcast::ingest;
using dfcast::testing::record;
using dfcast::testing::ymd;

namespace {

SalesTable parse(const std::string& body) {
  std::istringstream in(std::string(kSalesHeader) + "\n" + body);
  return read_sales_csv(in);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::io;
}

double col(const FeatureMatrix& fm, std::size_t row, const char* name) {
  return fm.values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(feature_index(name)));
}

}  // namespace

TEST_CASE("well-formed sales file") {
  const auto t = parse(
      "2021-01-05,P1,W1,3,1.5,0,2\n"
      "2021-01-04,P1,W1,4,,1,0\n"
      "2021-01-04,P2,W1,0,2,0,0\n");
  CHECK(t.record_count() == 3);
  REQUIRE(t.series.size() == 2);
  const auto& p1 = t.series[0].records;
  CHECK(p1[0].date == ymd(2021, 1, 4));
  CHECK_FALSE(p1[0].price.has_value());
  CHECK(p1[0].promotion);
  CHECK(p1[1].price == 1.5);
  CHECK(p1[1].known_orders == 2.0);
  CHECK(t.first_date() == ymd(2021, 1, 4));
  CHECK(t.last_date() == ymd(2021, 1, 5));
  CHECK(t.find(SeriesKey{ProductId("P2"), WarehouseId("W1")}) != nullptr);
  CHECK(t.find(SeriesKey{ProductId("P3"), WarehouseId("W1")}) == nullptr);
}

TEST_CASE("malformed rows report their line") {
  try {
    parse("2021-01-04,P1,W1,4,1,0,0\n2021-01-05,P1,W1,-1,1,0,0\n");
    FAIL("negative demand accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK(code_of([] { parse("2021-01-04,P1,W1,4,1,0\n"); }) == Errc::parse);
  CHECK(code_of([] { parse("2021-01-04,P1,W1,abc,1,0,0\n"); }) == Errc::parse);
  CHECK(code_of([] { parse("2021-13-04,P1,W1,1,1,0,0\n"); }) == Errc::parse);
  CHECK(code_of([] { parse("2021-01-04,P1,W1,1,0,0,0\n"); }) == Errc::parse);
  CHECK(code_of([] { parse("2021-01-04,P1,W1,1,1,2,0\n"); }) == Errc::parse);
  CHECK(code_of([] { parse("2021-01-04,P1,W1,1,1,0,-3\n"); }) == Errc::parse);
  std::istringstream wrong_header("date,product\n");
  CHECK(code_of([&] { read_sales_csv(wrong_header); }) == Errc::parse);
}

TEST_CASE("duplicate keys are rejected") {
  CHECK(code_of([] { parse("2021-01-04,P1,W1,4,1,0,0\n2021-01-04,P1,W1,5,1,0,0\n"); }) ==
        Errc::duplicate_record);
}

TEST_CASE("comment lines and CRLF are tolerated") {
  std::istringstream in("# master_seed=3\r\n" + std::string(kSalesHeader) + "\r\n2021-01-04,P1,W1,4,1,0,0\r\n");
  CHECK(read_sales_csv(in).record_count() == 1);
}

TEST_CASE("holiday and product files") {
  std::istringstream h("date\n2021-01-01\n2021-12-25\n");
  CHECK(read_holidays_csv(h) == std::set<Date>{ymd(2021, 1, 1), ymd(2021, 12, 25)});
  std::istringstream bad("date\n2021-02-31\n");
  CHECK_THROWS_AS(read_holidays_csv(bad), ParseError);
  std::istringstream p("product_id,category,base_demand\nP1,food,12.5\nP2,beverage,100\n");
  const auto products = read_product_csv(p);
  REQUIRE(products.size() == 2);
  CHECK(products[1].category == "beverage");
  CHECK(products[0].base_demand == 12.5);
}

TEST_CASE("impute_prices uses the group mean inside the fit range") {
  const DateInterval fit{ymd(2021, 1, 1), ymd(2021, 1, 31)};
  SalesTable t = group_records({record(ymd(2021, 1, 4), 1, 2.0), record(ymd(2021, 1, 5), 1, std::nullopt),
                                record(ymd(2021, 1, 6), 1, 4.0), record(ymd(2021, 2, 1), 1, 100.0),
                                record(ymd(2021, 2, 2), 1, std::nullopt)});
  const auto out = impute_prices(t, fit);
  const auto& r = out.series[0].records;
  CHECK(r[1].price == 3.0);
  CHECK(r[4].price == 3.0);  // test-period gap filled from training prices only
  for (std::size_t i : {0u, 2u, 3u}) CHECK(r[i].price == t.series[0].records[i].price);

  SalesTable full = group_records({record(ymd(2021, 1, 4), 1, 2.0), record(ymd(2021, 1, 5), 1, 5.0)});
  const auto same = impute_prices(full, fit);
  CHECK(same.series[0].records[1].price == 5.0);

  SalesTable none = group_records({record(ymd(2021, 1, 4), 1, std::nullopt, "PX"),
                                   record(ymd(2021, 2, 4), 1, 3.0, "PX")});
  try {
    impute_prices(none, fit);
    FAIL("imputation succeeded without observed prices");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::imputation_impossible);
    CHECK(std::string(e.what()).find("PX") != std::string::npos);
  }
}

TEST_CASE("two-day series gives one feature row") {
  const StoreCalendar cal(ymd(2021, 1, 4), ymd(2021, 1, 9), {});
  const auto t = group_records({record(ymd(2021, 1, 4), 5), record(ymd(2021, 1, 5), 7)});
  const auto fm = derive_series_features(t.series[0], cal);
  REQUIRE(fm.rows() == 1);
  CHECK(col(fm, 0, "prev_demand") == 5.0);
  CHECK(fm.targets(0) == 7.0);
  CHECK(col(fm, 0, "dow_tue") == 1.0);

  const auto short_t = group_records({record(ymd(2021, 1, 4), 5)});
  CHECK(code_of([&] { derive_series_features(short_t.series[0], cal); }) == Errc::too_short_series);
}

TEST_CASE("closure flags use calendar-day offsets") {
  // 2021-01-06 (Wednesday) is a holiday; 2021-01-09 is a Saturday.
  const std::set<Date> hol{ymd(2021, 1, 6)};
  const StoreCalendar cal(ymd(2021, 1, 4), ymd(2021, 1, 16), hol);
  std::vector<SalesRecord> recs;
  for (Date d : cal.open_days()) recs.push_back(record(d, 10));
  const auto fm = derive_series_features(group_records(recs).series[0], cal);
  auto row_of = [&](Date d) {
    return static_cast<std::size_t>(std::find(fm.dates.begin(), fm.dates.end(), d) - fm.dates.begin());
  };
  const auto tue = row_of(ymd(2021, 1, 5));
  CHECK(col(fm, tue, "holiday_tomorrow") == 1.0);
  CHECK(col(fm, tue, "store_open_tomorrow") == 0.0);
  CHECK(col(fm, tue, "store_open_day_after") == 1.0);
  const auto sat = row_of(ymd(2021, 1, 9));
  CHECK(col(fm, sat, "store_open_tomorrow") == 0.0);
  CHECK(col(fm, sat, "store_open_day_after") == 1.0);
  CHECK(col(fm, sat, "holiday_tomorrow") == 0.0);
  const auto fri = row_of(ymd(2021, 1, 8));
  CHECK(col(fm, fri, "store_open_day_after") == 0.0);
  CHECK(col(fm, fri, "dow_fri") == 1.0);
}

TEST_CASE("feature matrix invariants") {
  const std::set<Date> hol{ymd(2021, 4, 2), ymd(2021, 4, 5)};
  const StoreCalendar cal(ymd(2021, 3, 1), ymd(2021, 5, 31), hol);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> demand(0, 40);
  std::vector<SalesRecord> recs;
  for (Date d : cal.open_days()) {
    auto r = record(d, demand(rng), 1.0 + demand(rng) / 10.0);
    r.known_orders = demand(rng);
    r.promotion = demand(rng) > 30;
    recs.push_back(r);
  }
  const auto table = group_records(recs);
  const auto a = derive_features(table, cal);
  const auto b = derive_features(table, cal);
  REQUIRE(a.size() == 1);
  CHECK(a[0].values == b[0].values);
  CHECK(a[0].rows() == recs.size() - 1);
  for (std::size_t t = 1; t < a[0].rows(); ++t) {
    CHECK(col(a[0], t, "prev_demand") == a[0].targets(static_cast<Eigen::Index>(t - 1)));
  }
  for (const char* name : {"promotion", "dow_mon", "dow_sat", "store_open_tomorrow", "store_open_day_after",
                           "holiday_tomorrow", "holiday_day_after"}) {
    for (std::size_t t = 0; t < a[0].rows(); ++t) {
      const double v = col(a[0], t, name);
      CHECK((v == 0.0 || v == 1.0));
    }
  }
  CHECK_THROWS_AS(feature_index("weather"), Error);
}

TEST_CASE("records on closed days or with missing prices are rejected") {
  const StoreCalendar cal(ymd(2021, 1, 4), ymd(2021, 1, 16), {ymd(2021, 1, 6)});
  const auto on_holiday = group_records({record(ymd(2021, 1, 5), 1), record(ymd(2021, 1, 6), 1)});
  CHECK(code_of([&] { derive_series_features(on_holiday.series[0], cal); }) == Errc::schema);
  const auto missing = group_records({record(ymd(2021, 1, 4), 1), record(ymd(2021, 1, 5), 1, std::nullopt)});
  CHECK(code_of([&] { derive_series_features(missing.series[0], cal); }) == Errc::schema);
}
