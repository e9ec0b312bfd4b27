#include "cli/app.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "dfcast/error.hpp"

namespace dfcast::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dfcast: multi-step demand forecasting with LSTM networks and baselines"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> jobs;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--seed", seed, "master seed for every random choice");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--set", overrides, "override a configuration key (key=value)");

  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  auto* train = app.add_subcommand("train", "train LSTM models");
  auto* tune = app.add_subcommand("tune", "random hyperparameter search");
  auto* evaluate = app.add_subcommand("evaluate", "evaluate models and baselines on the test split");
  auto* forecast = app.add_subcommand("forecast", "forecast six working days from an origin");

  std::optional<std::string> variant, features, origin, sales;
  std::optional<std::size_t> trials;
  std::vector<std::string> models, baseline_tags;
  train->add_option("--variant", variant, "single, univariate, known_orders, feature_search, pretrain, parallel");
  train->add_option("--features", features, "feature set name");
  tune->add_option("--trials", trials, "number of random-search trials");
  tune->add_option("--features", features, "feature set name");
  evaluate->add_option("--model", models, "trained model file (repeatable)");
  evaluate->add_option("--baselines", baseline_tags, "baseline tags (ETS, MPQ, MDPQ, LR, RF)")->delimiter(',');
  evaluate->add_option("--features", features, "feature set for the regression baselines");
  forecast->add_option("--model", models, "trained model file")->required();
  forecast->add_option("--origin", origin, "forecast origin date")->required();
  forecast->add_option("--sales", sales, "sales CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    std::vector<std::string> layered = overrides;
    auto put = [&](const char* key, const std::string& value) { layered.push_back(std::string(key) + "=" + value); };
    if (seed) put("seed", std::to_string(*seed));
    if (out_dir) put("out", *out_dir);
    if (jobs) put("jobs", std::to_string(*jobs));
    if (variant) put("variant", *variant);
    if (features) put("feature_set", *features);
    if (trials) put("n_trials", std::to_string(*trials));
    if (origin) put("origin", *origin);
    if (sales) put("sales", *sales);
    std::string joined;
    for (const auto& m : models) joined += (joined.empty() ? "" : ",") + m;
    if (!models.empty()) put("models", joined);
    if (evaluate->parsed() && !baseline_tags.empty()) {
      joined.clear();
      for (const auto& b : baseline_tags) joined += (joined.empty() ? "" : ",") + b;
      put("baselines", joined == "none" ? "" : joined);
    }
    const auto kv = layered_config(config_path, layered);

    if (synth->parsed()) {
      cmd_synth(kv, kv.get_string("out", "."), seed);
      out << "dataset written to " << kv.get_string("out", ".") << '\n';
      return kOk;
    }
    const auto rc = RunConfig::from(kv);
    if (train->parsed()) cmd_train(rc, out);
    if (tune->parsed()) cmd_tune(rc, out);
    if (evaluate->parsed()) cmd_evaluate(rc, out);
    if (forecast->parsed()) cmd_forecast(rc, out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::config ? kUsageError : kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace dfcast::cli
