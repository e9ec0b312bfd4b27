#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dfcast/error.hpp"
#include "dfcast/nn/adam.hpp"
#include "dfcast/nn/dropout.hpp"
#include "dfcast/nn/lstm.hpp"
#include "dfcast/nn/model_io.hpp"
#include "dfcast/nn/network.hpp"
#include "dfcast/nn/train.hpp"
#include "gradcheck.hpp"
#include "helpers.hpp"

using namespace dfcast;
using namespace dfcast::nn;

namespace {

LstmParams zero_lstm(Eigen::Index h, Eigen::Index f) {
  return {Eigen::MatrixXd::Zero(4 * h, f), Eigen::MatrixXd::Zero(4 * h, h), Eigen::VectorXd::Zero(4 * h)};
}

Parameters small_model(std::uint64_t seed, int hidden = 4, Eigen::Index features = 2) {
  std::mt19937_64 rng(seed);
  return dfcast::testing::random_model(hidden, features, {5}, 6, rng);
}

/// Pure weekly pattern: one-hot weekday plus the scaled demand of that day.
std::vector<pipeline::WindowedSample> weekly_samples(std::size_t rows) {
  const double profile[6] = {0.2, 0.1, 0.35, 0.5, 0.8, 1.0};
  Eigen::MatrixXd in(static_cast<Eigen::Index>(rows), 7);
  Eigen::VectorXd target(static_cast<Eigen::Index>(rows));
  in.setZero();
  for (std::size_t r = 0; r < rows; ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    target(i) = profile[r % 6];
    in(i, 0) = profile[(r + 5) % 6];  // previous day's demand
    in(i, 1 + static_cast<Eigen::Index>(r % 6)) = 1.0;
  }
  return pipeline::make_windows(in, target, 36, 6);
}

}  // namespace

TEST_CASE("lstm with zero parameters stays at zero") {
  std::mt19937_64 rng(1);
  const auto x = dfcast::testing::random_samples(1, 10, 3, 6, rng).front().input;
  const auto out = lstm_forward(x, zero_lstm(4, 3));
  CHECK(out.hidden_sequence.isZero(0));
  CHECK(out.final_cell.isZero(0));
}

TEST_CASE("lstm single step by hand") {
  auto p = zero_lstm(1, 1);
  const double big = 30.0;
  p.bias(0) = big;                 // input gate
  p.bias(1) = -big;                // forget gate irrelevant with zero state
  p.bias(2) = std::atanh(0.5);     // candidate
  p.bias(3) = big;                 // output gate
  const auto out = lstm_forward(Eigen::MatrixXd::Constant(1, 1, 0.7), p);
  const double i = 1.0 / (1.0 + std::exp(-big));
  CHECK(out.final_cell(0) == doctest::Approx(i * 0.5).epsilon(1e-12));
  CHECK(out.final_hidden(0) == doctest::Approx(i * std::tanh(i * 0.5)).epsilon(1e-12));
  CHECK(out.final_cell(0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("lstm outputs are bounded and inputs validated") {
  std::mt19937_64 rng(2);
  const auto p = small_model(3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(12, 2) * 50.0;
    const auto out = lstm_forward(x, p.lstm);
    CHECK(out.hidden_sequence.cwiseAbs().maxCoeff() < 1.0);
  }
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 2);
  bad(1, 1) = std::nan("");
  CHECK_THROWS_AS(lstm_forward(bad, p.lstm), Error);
  CHECK_THROWS_AS(lstm_forward(Eigen::MatrixXd::Zero(3, 5), p.lstm), Error);
}

TEST_CASE("head examples") {
  auto p = small_model(4);
  for (auto& layer : p.head) layer.weights.setZero();
  p.head.back().bias << 1, 2, 3, 4, 5, 6;
  const Eigen::VectorXd y = forward(p, Eigen::MatrixXd::Random(8, 2));
  CHECK(y == p.head.back().bias);

  auto q = small_model(5);
  q.head.front().weights.setZero();
  q.head.front().bias.setConstant(-1.0);  // every ReLU pre-activation negative
  const Eigen::VectorXd z = forward(q, Eigen::MatrixXd::Random(8, 2));
  CHECK((z - q.head.back().bias).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(8, 2);
  CHECK(forward(q, x) == forward(q, x));
  CHECK_THROWS_AS(forward(q, Eigen::MatrixXd::Zero(8, 3)), Error);
}

TEST_CASE("mse examples") {
  const std::vector<double> zeros(6, 0.0), ones(6, 1.0);
  std::vector<double> two(6, 0.0);
  two[0] = 2.0;
  CHECK(mse_loss(ones, ones) == 0.0);
  CHECK(mse_loss(ones, zeros) == 1.0);
  CHECK(mse_loss(two, zeros) == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(mse_loss(std::vector<double>(5, 0.0), zeros), Error);
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937_64 rng(7);
  const auto params = dfcast::testing::random_model(5, 3, {7}, 6, rng);
  const auto samples = dfcast::testing::random_samples(4, 8, 3, 6, rng);
  const auto r = dfcast::testing::gradient_check(params, samples, 1e-5);
  CHECK(r.checked == params.parameter_count());
  CHECK(r.max_relative_error < 1e-4);

  std::mt19937_64 rng2(8);
  const auto deep = dfcast::testing::random_model(3, 2, {4, 3}, 6, rng2);
  const auto s2 = dfcast::testing::random_samples(3, 5, 2, 6, rng2);
  CHECK(dfcast::testing::gradient_check(deep, s2, 1e-5).max_relative_error < 1e-4);
}

TEST_CASE("zero-loss batch has zero final-bias gradient") {
  auto p = small_model(9);
  p.head.back().weights.setZero();
  std::mt19937_64 rng(10);
  auto samples = dfcast::testing::random_samples(3, 6, 2, 6, rng);
  for (auto& s : samples) s.target = p.head.back().bias;
  const std::vector<std::size_t> idx{0, 1, 2};
  ForwardCache cache;
  Eigen::MatrixXd d;
  const double loss = mse_loss_with_gradient(forward_batch(p, stack_inputs(samples, idx), &cache),
                                             stack_targets(samples, idx), d);
  CHECK(loss == 0.0);
  const auto g = backward_batch(p, cache, d);
  CHECK(g.head.back().bias.isZero(0));
}

TEST_CASE("duplicating a batch leaves the mean gradient unchanged") {
  const auto p = small_model(11);
  std::mt19937_64 rng(12);
  const auto samples = dfcast::testing::random_samples(3, 6, 2, 6, rng);
  auto grad = [&](const std::vector<std::size_t>& idx) {
    ForwardCache cache;
    Eigen::MatrixXd d;
    mse_loss_with_gradient(forward_batch(p, stack_inputs(samples, idx), &cache), stack_targets(samples, idx), d);
    return backward_batch(p, cache, d);
  };
  const auto once = grad({0, 1, 2});
  const auto twice = grad({0, 1, 2, 0, 1, 2});
  const auto a = once.tensors();
  const auto b = twice.tensors();
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t i = 0; i < a[t].size(); ++i) CHECK(a[t][i] == doctest::Approx(b[t][i]).epsilon(1e-12));
  }
}

TEST_CASE("adam update rules") {
  std::vector<double> w{0.5, -0.25}, g{0.0, 0.0}, m{0.0, 0.0}, v{0.0, 0.0};
  for (long step = 1; step <= 5; ++step) adam_update(w, g, m, v, step, 1e-3);
  CHECK(w == std::vector<double>{0.5, -0.25});

  std::vector<double> x{1.0, 1.0}, gc{0.3, -7.0}, m2{0.0, 0.0}, v2{0.0, 0.0};
  adam_update(x, gc, m2, v2, 1, 1e-3);
  CHECK(1.0 - x[0] == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK(x[1] - 1.0 == doctest::Approx(1e-3).epsilon(1e-6));

  auto p = small_model(13);
  auto grads = p.zeros_like();
  grads.lstm.bias.setConstant(0.1);
  auto state = AdamState::for_parameters(p);
  const auto before = p.lstm.bias;
  adam_step(p, grads, state, 1e-2);
  CHECK(state.step == 1);
  CHECK(((before - p.lstm.bias).array() > 0).all());
  CHECK(p.lstm.input_weights == small_model(13).lstm.input_weights);
}

TEST_CASE("inverted dropout") {
  std::mt19937_64 rng(14);
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(5, 4);
  CHECK(dropout_apply(a, 0.5, false, rng) == a);
  CHECK(dropout_apply(a, 0.0, true, rng) == a);
  CHECK_THROWS_AS(dropout_apply(a, 1.0, true, rng), Error);
  CHECK_THROWS_AS(dropout_mask(2, 2, -0.1, rng), Error);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(1, 100000);
  const Eigen::MatrixXd out = dropout_apply(ones, 0.5, true, rng);
  CHECK(std::abs(out.mean() - 1.0) < 0.01);
  for (Eigen::Index i = 0; i < out.size(); ++i) CHECK((out(i) == 0.0 || out(i) == 2.0));
}

TEST_CASE("dropout gradients follow the sampled mask") {
  std::mt19937_64 init(15);
  nn::ModelConfig c;
  c.lstm_units = 3;
  c.dense_units = {6};
  c.dropout_enabled = {true};
  auto p = init_parameters(c, 2, 6, init);
  std::mt19937_64 rng(16);
  const auto samples = dfcast::testing::random_samples(2, 4, 2, 6, rng);
  const std::vector<std::size_t> idx{0, 1};
  const auto steps = stack_inputs(samples, idx);
  const Eigen::MatrixXd target = stack_targets(samples, idx);
  auto loss_with_mask = [&](const Parameters& q, ForwardCache* cache, Eigen::MatrixXd* d) {
    std::mt19937_64 mask_rng(99);
    const DropoutContext ctx{0.4, &mask_rng};
    Eigen::MatrixXd local;
    return mse_loss_with_gradient(forward_batch(q, steps, cache, &ctx), target, d ? *d : local);
  };
  ForwardCache cache;
  Eigen::MatrixXd d;
  loss_with_mask(p, &cache, &d);
  const auto g = backward_batch(p, cache, d);
  const double eps = 1e-6;
  for (Eigen::Index i = 0; i < p.head.front().weights.size(); ++i) {
    Parameters up = p, down = p;
    up.head.front().weights.data()[i] += eps;
    down.head.front().weights.data()[i] -= eps;
    const double numeric = (loss_with_mask(up, nullptr, nullptr) - loss_with_mask(down, nullptr, nullptr)) / (2 * eps);
    CHECK(g.head.front().weights.data()[i] == doctest::Approx(numeric).epsilon(1e-5));
  }
}

TEST_CASE("early stopping on injected validation losses") {
  const auto samples = weekly_samples(80);
  ModelConfig c;
  c.lstm_units = 4;
  c.dense_units = {4};
  c.rng_seed = 3;
  std::vector<Parameters> seen;
  TrainOptions opt;
  opt.hooks.validation_loss = [](int epoch, double) { return 1.0 + epoch; };
  opt.hooks.on_epoch_end = [&](int, const Parameters& p) { seen.push_back(p); };
  const auto net = train(c, samples, samples, opt);
  CHECK(net.history.size() == 6);
  CHECK(net.best_epoch == 1);
  CHECK(net.params.lstm.input_weights == seen.front().lstm.input_weights);
  CHECK(net.params.head.back().bias == seen.front().head.back().bias);

  opt.hooks.validation_loss = [](int epoch, double) { return 1.0 / epoch; };
  c.max_epochs = 12;
  const auto capped = train(c, samples, samples, opt);
  CHECK(capped.history.size() == 12);
  CHECK(capped.best_epoch == 12);

  opt.hooks.validation_loss = [](int epoch, double v) { return epoch == 3 ? std::nan("") : v; };
  try {
    train(c, samples, samples, opt);
    FAIL("divergence not reported");
  } catch (const TrainingDiverged& e) {
    CHECK(e.epoch() == 3);
  }
}

TEST_CASE("best weights always have minimal validation loss") {
  const auto samples = weekly_samples(70);
  ModelConfig c;
  c.lstm_units = 4;
  c.dense_units = {4};
  c.rng_seed = 8;
  c.max_epochs = 15;
  const std::vector<double> losses{5, 3, 4, 3, 2.5, 2.5, 6, 7, 8, 9, 10, 1, 2, 3, 4};
  TrainOptions opt;
  opt.hooks.validation_loss = [&](int epoch, double) { return losses[static_cast<std::size_t>(epoch - 1)]; };
  const auto net = train(c, samples, samples, opt);
  CHECK(net.best_epoch == 5);  // the later tie does not count as improvement
  CHECK(net.history.size() == 10);
}

TEST_CASE("initial checkpoint keeps a better starting point") {
  const auto samples = weekly_samples(70);
  ModelConfig c;
  c.lstm_units = 4;
  c.dense_units = {4};
  c.rng_seed = 4;
  std::mt19937_64 rng(1);
  TrainOptions opt;
  opt.warm_start = init_parameters(c, 7, 6, rng);
  opt.initial_checkpoint = true;
  opt.hooks.validation_loss = [](int epoch, double) { return epoch == 0 ? 0.5 : 1.0 + epoch; };
  const auto net = train(c, samples, samples, opt);
  CHECK(net.best_epoch == 0);
  CHECK(net.params.lstm.input_weights == opt.warm_start->lstm.input_weights);
}

TEST_CASE("training is deterministic per seed") {
  const auto samples = weekly_samples(90);
  ModelConfig c;
  c.lstm_units = 6;
  c.dense_units = {5, 4};
  c.dropout_enabled = {true, false};
  c.dropout_rate = 0.3;
  c.max_epochs = 4;
  c.rng_seed = 21;
  const auto a = train(c, samples, samples);
  const auto b = train(c, samples, samples);
  CHECK(a.params.lstm.recurrent_weights == b.params.lstm.recurrent_weights);
  CHECK(a.params.head.back().weights == b.params.head.back().weights);
  CHECK(a.history.back().train_loss == b.history.back().train_loss);
  c.rng_seed = 22;
  CHECK(train(c, samples, samples).params.lstm.bias != a.params.lstm.bias);
}

TEST_CASE("noise-free weekly pattern is learned") {
  const auto samples = weekly_samples(400);
  ModelConfig c;  // 50 LSTM units, one dense layer of 50, lr 1e-3
  c.rng_seed = 5;
  std::mt19937_64 rng(c.rng_seed);
  const double initial = dataset_loss(init_parameters(c, 7, 6, rng), samples);
  const auto net = train(c, samples, samples);
  double best_train = net.history.front().train_loss;
  for (const auto& r : net.history) best_train = std::min(best_train, r.train_loss);
  CHECK(best_train < 0.1 * initial);
}

TEST_CASE("config validation") {
  ModelConfig c;
  c.dropout_enabled = {false, true};
  CHECK_THROWS_AS(c.validate(), Error);
  c = ModelConfig{};
  c.dropout_rate = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = ModelConfig{};
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("model files round trip") {
  ModelConfig c;
  c.lstm_units = 3;
  c.dense_units = {4, 2};
  c.dropout_enabled = {true, false};
  c.dropout_rate = 0.2;
  c.learning_rate = 1e-2;
  c.rng_seed = 77;
  std::mt19937_64 rng(2);
  TrainedModel m;
  m.network.config = c;
  m.network.params = init_parameters(c, 4, 12, rng);  // 2 columns x 2 series
  m.network.best_epoch = 9;
  m.network.history = {{1, 0.5, 0.25}, {2, 0.1 / 3.0, 0.2}};
  m.feature_columns = {"prev_demand", "known_orders"};
  for (const char* p : {"P1", "P2"}) {
    m.series.push_back({ProductId(p), WarehouseId("W1")});
    Eigen::MatrixXd rows = Eigen::MatrixXd::Random(10, 3);
    m.scalers.push_back(pipeline::MinMaxScaler::fit(rows, {"prev_demand", "known_orders", "demand"},
                                                    {dfcast::testing::ymd(2020, 1, 1), dfcast::testing::ymd(2020, 6, 30)}));
  }
  std::stringstream io;
  save_model(m, io);
  const auto back = load_model(io);
  CHECK(back.network.config == c);
  CHECK(back.network.best_epoch == 9);
  CHECK(back.series == m.series);
  CHECK(back.scalers == m.scalers);
  CHECK(back.feature_columns == m.feature_columns);
  CHECK(back.network.history.back().train_loss == m.network.history.back().train_loss);
  const auto a = m.network.params.tensors();
  const auto b = back.network.params.tensors();
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) CHECK(std::equal(a[t].begin(), a[t].end(), b[t].begin(), b[t].end()));
  CHECK(back.network.params.head[0].dropout);
  CHECK(back.network.params.head.back().activation == Activation::linear);

  std::stringstream bad("not-a-model 1\n");
  CHECK_THROWS_AS(load_model(bad), Error);
  std::string text = io.str();
  std::stringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_model(truncated), Error);
}
