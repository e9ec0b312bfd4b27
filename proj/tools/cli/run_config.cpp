#include "cli/run_config.hpp"

#include "dfcast/error.hpp"
#include "dfcast/experiments/feature_sets.hpp"
#include "dfcast/tune/search.hpp"

namespace dfcast::cli {

KeyValueConfig layered_config(const std::optional<std::filesystem::path>& path,
                              const std::vector<std::string>& overrides) {
  KeyValueConfig kv = path ? KeyValueConfig::load(*path) : KeyValueConfig{};
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || trim(o.substr(0, eq)).empty()) {
      throw Error(Errc::config, "override must be key=value: " + o);
    }
    kv.set(trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
  return kv;
}

RunConfig RunConfig::from(const KeyValueConfig& kv) {
  RunConfig rc;
  rc.raw = kv;
  rc.sales = kv.get_string("sales", rc.sales.string());
  rc.holidays = kv.get_string("holidays", rc.holidays.string());
  rc.products = kv.get_string("products", rc.products.string());
  rc.out_dir = kv.get_string("out", rc.out_dir.string());
  rc.variant = kv.get_string("variant", rc.variant);
  rc.feature_set = kv.get_string("feature_set", rc.feature_set);
  experiments::feature_set_by_name(rc.feature_set);
  rc.models = kv.get_strings("models", {});
  rc.baselines = kv.get_strings("baselines", {"ETS", "MPQ", "MDPQ", "LR", "RF"});
  rc.product_filter = kv.get_strings("products_filter", {});
  rc.warehouse = kv.get_string("warehouse", "");
  rc.origin = kv.get_string("origin", "");
  rc.seed = kv.get_uint("seed", 0);
  const long long trials = kv.get_int("n_trials", static_cast<long long>(rc.n_trials));
  if (trials < 1) throw Error(Errc::config, "n_trials must be >= 1");
  rc.n_trials = static_cast<std::size_t>(trials);
  const long long jobs = kv.get_int("jobs", rc.jobs);
  if (jobs < 1) throw Error(Errc::config, "jobs must be >= 1");
  rc.jobs = static_cast<unsigned>(jobs);
  if (kv.has("tune_max_epochs")) rc.tune_max_epochs = static_cast<int>(kv.get_int("tune_max_epochs", 70));
  rc.spearman_threshold = kv.get_double("spearman_threshold", rc.spearman_threshold);
  rc.model = tune::read_model_config(kv);
  return rc;
}

}  // namespace dfcast::cli
