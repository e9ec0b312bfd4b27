#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/app.hpp"
#include "dfcast/core/kv_config.hpp"
#include "dfcast/nn/model_io.hpp"
#include "dfcast/tune/search.hpp"

namespace fs = std::filesystem;
using namespace dfcast;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("DFCAST_TEST_TMP");
  const fs::path dir = fs::path(env ? env : fs::temp_directory_path().string()) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dfcast::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> data_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

/// Writes a two-product dataset and a run config pointing at it.
fs::path small_dataset(const std::string& name) {
  const fs::path dir = scratch(name);
  std::ofstream(dir / "synth.conf") << "n_products = 2\nn_beverage_products = 1\nbase_demand = 20,90\n";
  const auto r = invoke({"--config", (dir / "synth.conf").string(), "--seed", "4", "--out", dir.string(), "synth"});
  REQUIRE(r.code == 0);
  std::ofstream(dir / "run.conf") << "sales = " << (dir / "sales.csv").string() << '\n'
                                  << "holidays = " << (dir / "holidays.csv").string() << '\n'
                                  << "products = " << (dir / "products.csv").string() << '\n'
                                  << "lstm_units = 6\ndense_units = 6\nlearning_rate = 0.01\nmax_epochs = 3\n";
  return dir;
}

}  // namespace

TEST_CASE("usage and configuration errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"fly"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  const auto missing = invoke({"--config", "/nonexistent/run.conf", "synth"});
  CHECK(missing.code == 2);
  CHECK(!missing.err.empty());
  CHECK(invoke({"--set", "novalue", "synth"}).code == 2);
  const fs::path dir = scratch("bad_synth");
  CHECK(invoke({"--set", "months=5", "--out", dir.string(), "synth"}).code == 2);
}

TEST_CASE("synth writes three reproducible files") {
  const fs::path a = scratch("synth_a"), b = scratch("synth_b");
  REQUIRE(invoke({"--seed", "12", "--set", "n_products=2", "--out", a.string(), "synth"}).code == 0);
  REQUIRE(invoke({"--seed", "12", "--set", "n_products=2", "--out", b.string(), "synth"}).code == 0);
  for (const char* f : {"sales.csv", "holidays.csv", "products.csv"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / f).rfind("# master_seed=12\n", 0) == 0);
  }
  CHECK(data_lines(a / "products.csv").front() == "product_id,category,base_demand");
}

TEST_CASE("train, evaluate and forecast") {
  const fs::path dir = small_dataset("pipeline");
  const std::string conf = (dir / "run.conf").string();
  const fs::path models = dir / "models";
  fs::create_directories(models);

  CHECK(invoke({"--config", conf, "--out", models.string(), "train", "--features", "nonsense"}).code == 2);
  CHECK(invoke({"--config", conf, "--out", models.string(), "train", "--variant", "sideways"}).code == 2);

  const auto trained = invoke({"--config", conf, "--seed", "3", "--out", models.string(), "train", "--variant", "univariate"});
  REQUIRE(trained.code == 0);
  const fs::path model = models / "model_P001_W1.txt";
  REQUIRE(fs::exists(model));
  const auto history = data_lines(models / "history_P001_W1.csv");
  CHECK(history.front() == "epoch,train_loss,val_loss");
  CHECK(history.size() - 1 <= 70);
  CHECK(history.size() - 1 <= 3);
  CHECK(nn::load_model(model).feature_columns == std::vector<std::string>{"prev_demand"});

  const fs::path evald = dir / "eval";
  fs::create_directories(evald);
  const auto ev = invoke({"--config", conf, "--seed", "3", "--out", evald.string(), "evaluate", "--model", model.string(),
                       "--model", (models / "model_P002_W1.txt").string(), "--baselines", "ETS,MPQ,MDPQ,LR,RF"});
  REQUIRE(ev.code == 0);
  const auto summary = data_lines(evald / "summary.csv");
  CHECK(summary.front() == "model,category,overall_mean_mae,mean_mmape");
  std::size_t all_rows = 0;
  for (const auto& line : summary) all_rows += line.find(",all,") != std::string::npos;
  CHECK(all_rows == 6);
  CHECK(data_lines(evald / "evaluation.csv").size() == 1 + 2 * 6 * 6);
  for (const char* f : {"comparison_all.svg", "boxplot_all.svg", "comparison_food.svg", "boxplot_beverage.svg"}) {
    CHECK(slurp(evald / f).find("<svg") != std::string::npos);
  }

  const fs::path oracle = dir / "oracle";
  fs::create_directories(oracle);
  REQUIRE(invoke({"--config", conf, "--out", oracle.string(), "evaluate", "--baselines", "ORACLE"}).code == 0);
  const auto rows = data_lines(oracle / "evaluation.csv");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].substr(rows[i].size() - 18) == ",0.000000,0.000000");
  }
  CHECK(invoke({"--config", conf, "--out", oracle.string(), "evaluate", "--baselines", "ARIMA"}).code == 2);

  const fs::path fc = dir / "forecast";
  fs::create_directories(fc);
  const auto f = invoke({"--config", conf, "--out", fc.string(), "forecast", "--model", model.string(), "--origin",
                      "2021-06-15"});
  REQUIRE(f.code == 0);
  const auto lines = data_lines(fc / "forecast.csv");
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "product_id,warehouse_id,origin_date,lookahead,forecast");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].rfind("P001,W1,2021-06-15," + std::to_string(i) + ",", 0) == 0);
    CHECK(std::stod(lines[i].substr(lines[i].rfind(',') + 1)) >= 0.0);
  }
  CHECK(invoke({"--config", conf, "--out", fc.string(), "forecast", "--model", model.string(), "--origin", "2021-06-13"})
            .code == 2);
  CHECK(invoke({"--config", conf, "--out", fc.string(), "forecast", "--origin", "2021-06-15"}).code == 2);
  CHECK(invoke({"--config", conf, "--out", fc.string(), "forecast", "--model", (dir / "absent.txt").string(),
             "--origin", "2021-06-15"})
            .code != 0);
}

TEST_CASE("tune writes one row per trial") {
  const fs::path dir = small_dataset("tune");
  const std::string conf = (dir / "run.conf").string();
  const fs::path a = dir / "a", b = dir / "b";
  fs::create_directories(a);
  fs::create_directories(b);
  const std::vector<std::string> args{"--config", conf, "--seed", "8", "--set", "tune_max_epochs=1", "--set",
                                      "products_filter=P001", "--out"};
  auto with_out = [&](const fs::path& out) {
    auto v = args;
    v.push_back(out.string());
    v.insert(v.end(), {"tune", "--trials", "3", "--features", "known_orders"});
    return v;
  };
  REQUIRE(invoke(with_out(a)).code == 0);
  REQUIRE(invoke(with_out(b)).code == 0);
  const fs::path csv = a / "tuning_P001_W1.csv";
  REQUIRE(fs::exists(csv));
  CHECK(data_lines(csv).size() == 4);
  CHECK(data_lines(csv).front() == tune::kTuningHeader);
  CHECK(slurp(csv) == slurp(b / "tuning_P001_W1.csv"));
  const auto best = tune::read_model_config(KeyValueConfig::load(a / "best_config_P001_W1.txt"));
  auto on_grid = best;
  on_grid.max_epochs = 70;
  CHECK(tune::SearchSpace::standard().contains(on_grid));
}
