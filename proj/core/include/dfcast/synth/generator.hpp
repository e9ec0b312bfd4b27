#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dfcast/core/kv_config.hpp"
#include "dfcast/core/sales.hpp"
#include "dfcast/ingest/csv.hpp"

namespace dfcast::synth {

struct SubstitutionPair {
  std::string promoted;    // product whose promotion draws demand
  std::string substitute;  // product losing demand meanwhile
  double strength = 0.0;   // fraction of the substitute's demand shifted, in [0, 1]
};

struct SynthConfig {
  int n_products = 10;
  int n_warehouses = 1;
  int n_beverage_products = 0;  // the last n products are "beverage", the rest "food"
  int months = 29;
  Date start_date = std::chrono::sys_days{std::chrono::year{2019} / 3 / 1};
  std::vector<double> base_demand;  // per product; drawn from the seed when empty
  std::array<double, 6> weekly_profile{0.9, 0.85, 0.95, 1.0, 1.2, 1.4};  // Monday..Saturday
  double yearly_amplitude = 0.2;
  double promo_probability = 0.03;  // long-run fraction of promotion days
  int promo_duration = 1;           // working days per promotion campaign
  double promo_price_drop = 0.2;
  double promo_demand_lift = 1.5;
  double known_orders_fraction = 0.8;
  double known_orders_noise = 0.1;  // relative sd of the order noise
  double noise_dispersion = 0.15;   // coefficient of variation of the unit-mean gamma noise
  double price_missing_probability = 0.01;
  std::vector<SubstitutionPair> substitution_pairs;
  std::uint64_t seed = 0;

  /// Throws Errc::config.
  void validate() const;

  /// Keys mirror the field names; weekly_profile and base_demand are comma
  /// lists, substitution_pairs is `A:B:strength` entries separated by commas.
  static SynthConfig from_config(const KeyValueConfig& kv);
};

struct SynthDataset {
  std::vector<SalesRecord> sales;  // ordered by product, warehouse, date
  std::set<Date> holidays;
  std::vector<ingest::ProductInfo> products;
  DateInterval span;
};

Date easter_sunday(int year);

/// Chain-wide promotion flags for `days` open days: campaigns of `duration`
/// consecutive days starting with a probability chosen so that the expected
/// fraction of promotion days equals `probability`.
std::vector<bool> promotion_days(std::size_t days, double probability, int duration, std::mt19937_64& rng);

/// Fixed public holidays of one year: New Year, Good Friday, Easter Monday,
/// Labour Day, Ascension, Whit Monday, Unity Day, both Christmas days.
std::set<Date> public_holidays(int year);

SynthDataset generate(const SynthConfig& config);

void write_sales_csv(std::ostream& out, const std::vector<SalesRecord>& sales, std::uint64_t seed);
void write_holidays_csv(std::ostream& out, const std::set<Date>& holidays, std::uint64_t seed);
void write_product_csv(std::ostream& out, const std::vector<ingest::ProductInfo>& products, std::uint64_t seed);

/// Writes sales.csv, holidays.csv and products.csv into `dir`.
void write_dataset(const SynthDataset& data, const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace dfcast::synth
