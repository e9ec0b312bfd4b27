#include "dfcast/nn/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dfcast/core/kv_config.hpp"
#include "dfcast/error.hpp"

namespace dfcast::nn {
namespace {

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, std::string>) {
      out += xs[i];
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

void write_tensor(std::ostream& out, const std::string& name, const Eigen::MatrixXd& m) {
  out << "tensor " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.size(); ++i) out << (i ? " " : "") << exact(m.data()[i]);
  out << '\n';
}

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::schema, "model file: " + what); }

Eigen::MatrixXd read_tensor(std::istream& in, const std::string& expected) {
  std::string line;
  if (!std::getline(in, line)) bad("missing tensor " + expected);
  std::istringstream head(line);
  std::string tag, name;
  Eigen::Index rows = 0, cols = 0;
  head >> tag >> name >> rows >> cols;
  if (tag != "tensor" || name != expected || rows < 0 || cols < 0) bad("expected tensor " + expected);
  Eigen::MatrixXd m(rows, cols);
  if (!std::getline(in, line)) bad("missing values for " + expected);
  std::istringstream body(line);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    std::string tok;
    if (!(body >> tok)) bad("short tensor " + expected);
    try {
      m.data()[i] = std::stod(tok);
    } catch (const std::exception&) {
      bad("bad number in " + expected);
    }
  }
  return m;
}

}  // namespace

void save_model(const TrainedModel& model, std::ostream& out) {
  const auto& cfg = model.network.config;
  out << "dfcast-model " << kModelFormatVersion << '\n';
  out << "name=" << model.name << '\n';
  out << "config.lstm_units=" << cfg.lstm_units << '\n';
  out << "config.dense_units=" << join(cfg.dense_units) << '\n';
  std::vector<int> flags(cfg.dropout_enabled.begin(), cfg.dropout_enabled.end());
  out << "config.dropout_enabled=" << join(flags) << '\n';
  out << "config.dropout_rate=" << exact(cfg.dropout_rate) << '\n';
  out << "config.learning_rate=" << exact(cfg.learning_rate) << '\n';
  out << "config.batch_size=" << cfg.batch_size << '\n';
  out << "config.max_epochs=" << cfg.max_epochs << '\n';
  out << "config.patience=" << cfg.patience << '\n';
  out << "config.input_window=" << cfg.input_window << '\n';
  out << "config.horizon=" << cfg.horizon << '\n';
  out << "config.rng_seed=" << cfg.rng_seed << '\n';
  out << "best_epoch=" << model.network.best_epoch << '\n';
  out << "features=" << join(model.feature_columns) << '\n';
  for (const auto& h : model.network.history) {
    out << "history=" << h.epoch << ',' << exact(h.train_loss) << ',' << exact(h.val_loss) << '\n';
  }
  for (std::size_t i = 0; i < model.series.size(); ++i) {
    out << "series=" << model.series[i].product.str() << ',' << model.series[i].warehouse.str()
        << '\n';
    model.scalers.at(i).save(out);
    out << "end\n";
  }
  out << "params\n";
  const auto& p = model.network.params;
  write_tensor(out, "lstm.input_weights", p.lstm.input_weights);
  write_tensor(out, "lstm.recurrent_weights", p.lstm.recurrent_weights);
  write_tensor(out, "lstm.bias", p.lstm.bias);
  out << "head_layers=" << p.head.size() << '\n';
  for (std::size_t l = 0; l < p.head.size(); ++l) {
    const auto& layer = p.head[l];
    out << "layer=" << (layer.activation == Activation::relu ? "relu" : "linear") << ','
        << (layer.dropout ? 1 : 0) << '\n';
    write_tensor(out, "head." + std::to_string(l) + ".weights", layer.weights);
    write_tensor(out, "head." + std::to_string(l) + ".bias", layer.bias);
  }
}

TrainedModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "dfcast-model " + std::to_string(kModelFormatVersion)) {
    bad("unsupported header (expected version " + std::to_string(kModelFormatVersion) + ")");
  }
  TrainedModel model;
  KeyValueConfig kv;
  while (std::getline(in, line)) {
    if (line == "params") break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad("unexpected line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "history") {
      const auto parts = split(value, ',');
      if (parts.size() != 3) bad("bad history line");
      model.network.history.push_back({std::stoi(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
    } else if (key == "series") {
      const auto parts = split(value, ',');
      if (parts.size() != 2) bad("bad series line");
      model.series.push_back({ProductId{parts[0]}, WarehouseId{parts[1]}});
      model.scalers.push_back(pipeline::MinMaxScaler::load(in));
    } else {
      kv.set(key, value);
    }
  }
  if (line != "params") bad("missing params section");

  auto& cfg = model.network.config;
  model.name = kv.get_string("name", "LSTM");
  cfg.lstm_units = static_cast<int>(kv.get_int("config.lstm_units", 0));
  cfg.dense_units.clear();
  for (double u : kv.get_doubles("config.dense_units", {})) cfg.dense_units.push_back(int(u));
  cfg.dropout_enabled.clear();
  for (double f : kv.get_doubles("config.dropout_enabled", {})) cfg.dropout_enabled.push_back(f != 0);
  cfg.dropout_rate = kv.get_double("config.dropout_rate", 0.0);
  cfg.learning_rate = kv.get_double("config.learning_rate", 0.0);
  cfg.batch_size = static_cast<int>(kv.get_int("config.batch_size", 0));
  cfg.max_epochs = static_cast<int>(kv.get_int("config.max_epochs", 0));
  cfg.patience = static_cast<int>(kv.get_int("config.patience", 0));
  cfg.input_window = static_cast<int>(kv.get_int("config.input_window", 0));
  cfg.horizon = static_cast<int>(kv.get_int("config.horizon", 0));
  cfg.rng_seed = kv.get_uint("config.rng_seed", 0);
  cfg.validate();
  model.network.best_epoch = static_cast<int>(kv.get_int("best_epoch", 0));
  model.feature_columns = kv.get_strings("features", {});
  if (model.series.empty() || model.feature_columns.empty()) bad("missing series or features");

  auto& p = model.network.params;
  p.lstm.input_weights = read_tensor(in, "lstm.input_weights");
  p.lstm.recurrent_weights = read_tensor(in, "lstm.recurrent_weights");
  p.lstm.bias = read_tensor(in, "lstm.bias");
  if (!std::getline(in, line) || line.rfind("head_layers=", 0) != 0) bad("missing head_layers");
  const std::size_t layers = std::stoul(line.substr(12));
  for (std::size_t l = 0; l < layers; ++l) {
    if (!std::getline(in, line) || line.rfind("layer=", 0) != 0) bad("missing layer header");
    const auto parts = split(line.substr(6), ',');
    if (parts.size() != 2) bad("bad layer header");
    DenseParams layer;
    layer.activation = parts[0] == "relu" ? Activation::relu : Activation::linear;
    layer.dropout = parts[1] == "1";
    layer.weights = read_tensor(in, "head." + std::to_string(l) + ".weights");
    layer.bias = read_tensor(in, "head." + std::to_string(l) + ".bias");
    p.head.push_back(std::move(layer));
  }
  if (p.head.empty()) bad("no head layers");
  const Eigen::Index h = cfg.lstm_units;
  if (p.lstm.recurrent_weights.rows() != 4 * h || p.lstm.recurrent_weights.cols() != h ||
      p.lstm.input_weights.rows() != 4 * h || p.lstm.bias.size() != 4 * h ||
      static_cast<std::size_t>(p.lstm.input_weights.cols()) != model.feature_columns.size() * model.series.size() ||
      p.n_outputs() != cfg.horizon * static_cast<Eigen::Index>(model.series.size())) {
    bad("tensor shapes disagree with config");
  }
  return model;
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  save_model(model, out);
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return load_model(in);
}

}  // namespace dfcast::nn
