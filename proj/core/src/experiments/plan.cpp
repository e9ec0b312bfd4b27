#include "dfcast/experiments/plan.hpp"

#include <array>

#include "dfcast/error.hpp"
#include "dfcast/experiments/feature_sets.hpp"

namespace dfcast::experiments {
namespace {

constexpr std::array<std::pair<Variant, const char*>, 5> kNames{{
    {Variant::univariate, "univariate"},
    {Variant::known_orders, "known_orders"},
    {Variant::feature_search, "feature_search"},
    {Variant::pretrain, "pretrain"},
    {Variant::parallel, "parallel"},
}};

}  // namespace

std::string to_string(Variant v) {
  for (const auto& [variant, name] : kNames) {
    if (variant == v) return name;
  }
  return "unknown";
}

std::optional<Variant> parse_variant(const std::string& text) {
  for (const auto& [variant, name] : kNames) {
    if (text == name) return variant;
  }
  return std::nullopt;
}

void ExperimentPlan::validate() const {
  if (seeds.empty()) throw Error(Errc::config, "plan needs at least one seed");
  for (const auto& name : feature_sets) feature_set_by_name(name);
  switch (variant) {
    case Variant::parallel:
      if (!products.empty() && products.size() < 2) {
        throw Error(Errc::config, "parallel plan needs at least two products");
      }
      break;
    case Variant::feature_search:
      if (feature_sets.empty()) throw Error(Errc::config, "feature_search plan needs candidate feature_sets");
      break;
    case Variant::pretrain:
      if (warehouse.empty()) throw Error(Errc::config, "pretrain plan needs a target warehouse");
      if (!(spearman_threshold >= 0.0)) throw Error(Errc::config, "spearman_threshold must be >= 0");
      break;
    default:
      break;
  }
}

ExperimentPlan ExperimentPlan::from_config(const KeyValueConfig& kv) {
  ExperimentPlan plan;
  const auto name = kv.get_string("variant", "univariate");
  const auto v = parse_variant(name);
  if (!v) throw Error(Errc::config, "unknown experiment variant: " + name);
  plan.variant = *v;
  plan.products = kv.get_strings("products", {});
  plan.warehouse = kv.get_string("warehouse", "");
  plan.feature_sets = kv.get_strings("feature_sets", {});
  if (kv.has("seeds")) {
    plan.seeds.clear();
    for (const auto& s : kv.get_strings("seeds", {})) {
      try {
        plan.seeds.push_back(std::stoull(s));
      } catch (const std::exception&) {
        throw Error(Errc::config, "invalid seed: " + s);
      }
    }
  }
  plan.spearman_threshold = kv.get_double("spearman_threshold", plan.spearman_threshold);
  plan.validate();
  return plan;
}

}  // namespace dfcast::experiments
