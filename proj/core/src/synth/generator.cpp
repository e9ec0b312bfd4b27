#include "dfcast/synth/generator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "dfcast/core/calendar.hpp"
#include "dfcast/error.hpp"

namespace dfcast::synth {
namespace {

using namespace std::chrono;

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

std::string product_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "P%03d", i + 1);
  return buf;
}

std::string warehouse_name(int i) { return "W" + std::to_string(i + 1); }

std::string number(double x, const char* fmt) {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::config, "synth: " + what); };
  if (n_products < 1) fail("n_products must be >= 1");
  if (n_warehouses < 1) fail("n_warehouses must be >= 1");
  if (n_beverage_products < 0 || n_beverage_products > n_products) fail("n_beverage_products out of range");
  if (months < 28) fail("months must be >= 28");
  if (!base_demand.empty() && base_demand.size() != static_cast<std::size_t>(n_products)) {
    fail("base_demand needs one value per product");
  }
  for (double b : base_demand) {
    if (!(b > 0.0)) fail("base_demand entries must be > 0");
  }
  for (double w : weekly_profile) {
    if (!(w > 0.0)) fail("weekly_profile entries must be > 0");
  }
  if (!(std::abs(yearly_amplitude) < 1.0)) fail("yearly_amplitude must lie in (-1, 1)");
  if (!probability(promo_probability)) fail("promo_probability must lie in [0, 1]");
  if (promo_duration < 1) fail("promo_duration must be >= 1");
  if (!probability(price_missing_probability)) fail("price_missing_probability must lie in [0, 1]");
  if (!(promo_price_drop >= 0.0 && promo_price_drop < 1.0)) fail("promo_price_drop must lie in [0, 1)");
  if (!(promo_demand_lift > 0.0)) fail("promo_demand_lift must be > 0");
  if (!probability(known_orders_fraction)) fail("known_orders_fraction must lie in [0, 1]");
  if (!(known_orders_noise >= 0.0)) fail("known_orders_noise must be >= 0");
  if (!(noise_dispersion >= 0.0)) fail("noise_dispersion must be >= 0");
  for (const auto& p : substitution_pairs) {
    bool a = false, b = false;
    for (int i = 0; i < n_products; ++i) {
      a = a || product_name(i) == p.promoted;
      b = b || product_name(i) == p.substitute;
    }
    if (!a || !b || p.promoted == p.substitute) fail("substitution pair names unknown products");
    if (!probability(p.strength)) fail("substitution strength must lie in [0, 1]");
  }
}

SynthConfig SynthConfig::from_config(const KeyValueConfig& kv) {
  SynthConfig c;
  c.n_products = static_cast<int>(kv.get_int("n_products", c.n_products));
  c.n_warehouses = static_cast<int>(kv.get_int("n_warehouses", c.n_warehouses));
  c.n_beverage_products = static_cast<int>(kv.get_int("n_beverage_products", c.n_beverage_products));
  c.months = static_cast<int>(kv.get_int("months", c.months));
  if (auto s = kv.find("start_date")) {
    const auto d = parse_date(*s);
    if (!d) throw Error(Errc::config, "synth: invalid start_date " + *s);
    c.start_date = *d;
  }
  c.base_demand = kv.get_doubles("base_demand", c.base_demand);
  if (kv.has("weekly_profile")) {
    const auto w = kv.get_doubles("weekly_profile", {});
    if (w.size() != 6) throw Error(Errc::config, "synth: weekly_profile needs 6 values");
    std::copy(w.begin(), w.end(), c.weekly_profile.begin());
  }
  c.yearly_amplitude = kv.get_double("yearly_amplitude", c.yearly_amplitude);
  c.promo_probability = kv.get_double("promo_probability", c.promo_probability);
  c.promo_duration = static_cast<int>(kv.get_int("promo_duration", c.promo_duration));
  c.promo_price_drop = kv.get_double("promo_price_drop", c.promo_price_drop);
  c.promo_demand_lift = kv.get_double("promo_demand_lift", c.promo_demand_lift);
  c.known_orders_fraction = kv.get_double("known_orders_fraction", c.known_orders_fraction);
  c.known_orders_noise = kv.get_double("known_orders_noise", c.known_orders_noise);
  c.noise_dispersion = kv.get_double("noise_dispersion", c.noise_dispersion);
  c.price_missing_probability = kv.get_double("price_missing_probability", c.price_missing_probability);
  for (const auto& entry : kv.get_strings("substitution_pairs", {})) {
    const auto parts = split(entry, ':');
    if (parts.size() != 3) throw Error(Errc::config, "synth: substitution pair must be A:B:strength");
    SubstitutionPair p{trim(parts[0]), trim(parts[1]), 0.0};
    try {
      p.strength = std::stod(parts[2]);
    } catch (const std::exception&) {
      throw Error(Errc::config, "synth: invalid substitution strength " + parts[2]);
    }
    c.substitution_pairs.push_back(p);
  }
  c.seed = kv.get_uint("seed", c.seed);
  c.validate();
  return c;
}

Date easter_sunday(int y) {
  // Anonymous Gregorian algorithm.
  const int a = y % 19, b = y / 100, c = y % 100, d = b / 4, e = b % 4;
  const int f = (b + 8) / 25, g = (b - f + 1) / 3, h = (19 * a + b - d - g + 15) % 30;
  const int i = c / 4, k = c % 4, l = (32 + 2 * e + 2 * i - h - k) % 7;
  const int m = (a + 11 * h + 22 * l) / 451;
  const int month = (h + l - 7 * m + 114) / 31, day = (h + l - 7 * m + 114) % 31 + 1;
  return sys_days{year{y} / month / day};
}

std::vector<bool> promotion_days(std::size_t days, double probability, int duration, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<bool> out(days, false);
  if (probability >= 1.0) {
    out.assign(days, true);
    return out;
  }
  // A renewal process alternating idle days and campaigns of `duration` days
  // has a stationary promotion share of L*q / (L*q + 1 - q) for start
  // probability q; solve for q.
  const double l = static_cast<double>(duration);
  const double start = probability / (l * (1.0 - probability) + probability);
  for (std::size_t t = 0; t < days;) {
    if (unit(rng) < start) {
      for (std::size_t k = 0; k < static_cast<std::size_t>(duration) && t < days; ++k) out[t++] = true;
    } else {
      ++t;
    }
  }
  return out;
}

std::set<Date> public_holidays(int y) {
  const Date easter = easter_sunday(y);
  return {
      sys_days{year{y} / 1 / 1},   easter - days{2},           easter + days{1},
      sys_days{year{y} / 5 / 1},   easter + days{39},          easter + days{50},
      sys_days{year{y} / 10 / 3},  sys_days{year{y} / 12 / 25}, sys_days{year{y} / 12 / 26},
  };
}

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SynthDataset data;
  data.span = {config.start_date, add_months(config.start_date, config.months) - days{1}};
  const int first_year = static_cast<int>(year_month_day{data.span.first}.year());
  const int last_year = static_cast<int>(year_month_day{data.span.last}.year());
  for (int y = first_year; y <= last_year; ++y) {
    for (Date d : public_holidays(y)) {
      if (data.span.contains(d)) data.holidays.insert(d);
    }
  }
  const StoreCalendar cal(data.span.first, data.span.last, data.holidays);
  const auto open = cal.open_days();

  const auto n_products = static_cast<std::size_t>(config.n_products);
  std::vector<double> base = config.base_demand;
  std::vector<double> base_price(n_products);
  for (std::size_t p = 0; p < n_products; ++p) {
    const bool beverage = p >= n_products - static_cast<std::size_t>(config.n_beverage_products);
    if (config.base_demand.empty()) base.push_back(beverage ? 80.0 + 120.0 * unit(rng) : 10.0 + 50.0 * unit(rng));
    base_price[p] = 0.5 + 4.5 * unit(rng);
    data.products.push_back({ProductId(product_name(static_cast<int>(p))), beverage ? "beverage" : "food",
                             base[p]});
  }
  std::vector<double> warehouse_scale(static_cast<std::size_t>(config.n_warehouses), 1.0);
  for (std::size_t w = 1; w < warehouse_scale.size(); ++w) warehouse_scale[w] = 0.6 + 0.8 * unit(rng);

  // Promotions are chain-wide: one draw per product and open day.
  std::vector<std::vector<bool>> promo;
  for (std::size_t p = 0; p < n_products; ++p) {
    promo.push_back(promotion_days(open.size(), config.promo_probability, config.promo_duration, rng));
  }

  // Expected demand per product and day before warehouse scaling and noise.
  std::vector<std::vector<double>> expected(n_products, std::vector<double>(open.size()));
  for (std::size_t t = 0; t < open.size(); ++t) {
    const double season =
        1.0 + config.yearly_amplitude * std::sin(2.0 * std::numbers::pi * day_of_year(open[t]) / 365.0);
    const double weekday = config.weekly_profile[working_weekday_index(open[t])];
    for (std::size_t p = 0; p < n_products; ++p) {
      expected[p][t] = base[p] * weekday * season * (promo[p][t] ? config.promo_demand_lift : 1.0);
    }
  }
  const std::vector<std::vector<double>> unshifted = expected;
  auto index_of = [&](const std::string& id) {
    for (std::size_t p = 0; p < n_products; ++p) {
      if (data.products[p].id.str() == id) return p;
    }
    return n_products;
  };
  for (const auto& pair : config.substitution_pairs) {
    const std::size_t a = index_of(pair.promoted), b = index_of(pair.substitute);
    for (std::size_t t = 0; t < open.size(); ++t) {
      if (promo[a][t] && !promo[b][t]) {
        expected[a][t] += pair.strength * unshifted[b][t];
        expected[b][t] *= 1.0 - pair.strength;
      }
    }
  }

  // Unit-mean gamma with coefficient of variation k: shape 1/k^2, scale k^2.
  const double k = config.noise_dispersion;
  const double var = k * k;
  std::gamma_distribution<double> gamma(k > 0.0 ? 1.0 / var : 1.0, k > 0.0 ? var : 1.0);
  for (std::size_t p = 0; p < n_products; ++p) {
    for (std::size_t w = 0; w < warehouse_scale.size(); ++w) {
      const WarehouseId warehouse(warehouse_name(static_cast<int>(w)));
      for (std::size_t t = 0; t < open.size(); ++t) {
        const double noise = k > 0.0 ? gamma(rng) : 1.0;
        const double demand = std::round(expected[p][t] * warehouse_scale[w] * noise);
        const double order_noise = config.known_orders_noise > 0.0 ? config.known_orders_noise * gauss(rng) : 0.0;
        const double orders = std::max(0.0, std::round(config.known_orders_fraction * demand * (1.0 + order_noise)));
        SalesRecord r{open[t], data.products[p].id, warehouse, demand, std::nullopt, promo[p][t], orders};
        if (!(unit(rng) < config.price_missing_probability)) {
          r.price = std::round(100.0 * base_price[p] * (promo[p][t] ? 1.0 - config.promo_price_drop : 1.0)) / 100.0;
          if (*r.price <= 0.0) r.price = 0.01;
        }
        data.sales.push_back(std::move(r));
      }
    }
  }
  return data;
}

void write_sales_csv(std::ostream& out, const std::vector<SalesRecord>& sales, std::uint64_t seed) {
  out << "# master_seed=" << seed << '\n' << ingest::kSalesHeader << '\n';
  for (const auto& r : sales) {
    out << format_date(r.date) << ',' << r.product.str() << ',' << r.warehouse.str() << ','
        << number(r.demand, "%.0f") << ',' << (r.price ? number(*r.price, "%.2f") : std::string()) << ','
        << (r.promotion ? 1 : 0) << ',' << number(r.known_orders, "%.0f") << '\n';
  }
}

void write_holidays_csv(std::ostream& out, const std::set<Date>& holidays, std::uint64_t seed) {
  out << "# master_seed=" << seed << '\n' << ingest::kHolidayHeader << '\n';
  for (Date d : holidays) out << format_date(d) << '\n';
}

void write_product_csv(std::ostream& out, const std::vector<ingest::ProductInfo>& products, std::uint64_t seed) {
  out << "# master_seed=" << seed << '\n' << ingest::kProductHeader << '\n';
  for (const auto& p : products) out << p.id.str() << ',' << p.category << ',' << number(p.base_demand, "%.6f") << '\n';
}

void write_dataset(const SynthDataset& data, const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  auto sales = open_for_write(dir / "sales.csv");
  write_sales_csv(sales, data.sales, seed);
  auto holidays = open_for_write(dir / "holidays.csv");
  write_holidays_csv(holidays, data.holidays, seed);
  auto products = open_for_write(dir / "products.csv");
  write_product_csv(products, data.products, seed);
  if (!sales || !holidays || !products) throw Error(Errc::io, "failed writing dataset to " + dir.string());
}

}  // namespace dfcast::synth
