#include <doctest.h>

#include <cmath>

#include "snasa/baseline_asv.hpp"
#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/rng.hpp"
#include "test_support.hpp"

using namespace snasa;
using namespace snasa::testing;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

// Points at (+-1, 0): linearly separable two-class toy.
std::vector<LabeledVector> separable_toy() {
  std::vector<LabeledVector> data;
  for (int i = 0; i < 10; ++i) {
    const double jitter = 0.05 * i;
    data.emplace_back(vec2(1.0 + jitter, 0.2 * i - 1.0), label3(2));
    data.emplace_back(vec2(-1.0 - jitter, 1.0 - 0.2 * i), label3(0));
  }
  return data;
}

}  // namespace

TEST_SUITE("baseline_asv") {

TEST_CASE("word vectors load with a consistent dimension") {
  TempDir tmp("asv");
  write_file(tmp.path("v.txt"), "good 1 0 0\nbad 0 1 0\n");
  const auto table = load_word_vectors(tmp.path("v.txt"));
  CHECK(table.dimension == 3);
  CHECK(table.vectors.size() == 2);
  CHECK(table.vectors.at("good")(0) == 1.0);

  write_file(tmp.path("mixed.txt"), "good 1 0 0\nbad 0 1\n");
  CHECK_THROWS_AS(load_word_vectors(tmp.path("mixed.txt")), DataError);

  write_file(tmp.path("dup.txt"), "good 1 0\ngood 0 1\n");
  CHECK_THROWS_AS(load_word_vectors(tmp.path("dup.txt")), DataError);

  write_file(tmp.path("empty.txt"), "");
  CHECK_THROWS_AS(load_word_vectors(tmp.path("empty.txt")), DataError);
}

TEST_CASE("sentence averaging") {
  WordVectorTable table;
  table.dimension = 2;
  table.vectors["one"] = vec2(1.0, 0.0);
  table.vectors["two"] = vec2(0.0, 1.0);

  const auto avg = average_sentence_vector("one two", table);
  CHECK(avg(0) == 0.5);
  CHECK(avg(1) == 0.5);

  const auto solo = average_sentence_vector("one", table);
  CHECK(solo(0) == 1.0);
  CHECK(solo(1) == 0.0);

  // OOV tokens are skipped; the divisor counts found tokens only
  const auto skip = average_sentence_vector("one mystery", table);
  CHECK(skip(0) == 1.0);

  std::vector<std::string> warnings;
  set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
  const auto zero = average_sentence_vector("mystery tokens", table);
  set_warning_sink(nullptr);
  CHECK(zero.isZero());
  CHECK(warnings.size() == 1);

  CHECK_THROWS_AS(average_sentence_vector("   ", table), DataError);
}

TEST_CASE("averaging is permutation invariant") {
  WordVectorTable table;
  table.dimension = 2;
  table.vectors["a"] = vec2(1.0, 2.0);
  table.vectors["b"] = vec2(-1.0, 0.5);
  table.vectors["c"] = vec2(0.25, -4.0);
  const auto x = average_sentence_vector("a b c", table);
  const auto y = average_sentence_vector("c a b", table);
  CHECK(x(0) == doctest::Approx(y(0)).epsilon(1e-15));
  CHECK(x(1) == doctest::Approx(y(1)).epsilon(1e-15));
}

TEST_CASE("logistic regression separates the separable toy") {
  const auto data = separable_toy();
  const auto model = train_logreg(data, LabelScheme::ThreeClass, 0.001, 1e-6, 3000);
  for (const auto& [x, label] : data) {
    CHECK(predict_logreg(model, x) == label);
  }
}

TEST_CASE("huge regularization collapses to the prior argmax") {
  std::vector<LabeledVector> data;
  for (int i = 0; i < 8; ++i) data.emplace_back(vec2(1.0, 0.1 * i), label3(2));
  for (int i = 0; i < 3; ++i) data.emplace_back(vec2(-1.0, -0.1 * i), label3(0));
  const auto model = train_logreg(data, LabelScheme::ThreeClass, 1e6, 1e-9, 5000);
  CHECK(model.weights.cwiseAbs().maxCoeff() < 1e-3);
  for (const auto& [x, label] : data) {
    CHECK(predict_logreg(model, x).token() == "pos");  // majority class
  }
}

TEST_CASE("zero features make a bias-only majority model") {
  std::vector<LabeledVector> data;
  for (int i = 0; i < 5; ++i) data.emplace_back(Eigen::VectorXd::Zero(3), label3(0));
  for (int i = 0; i < 2; ++i) data.emplace_back(Eigen::VectorXd::Zero(3), label3(2));
  const auto model = train_logreg(data, LabelScheme::ThreeClass, 0.001, 1e-8, 2000);
  CHECK(predict_logreg(model, Eigen::VectorXd::Zero(3)).token() == "neg");
}

TEST_CASE("single-class input is rejected") {
  std::vector<LabeledVector> data;
  data.emplace_back(vec2(1, 0), label3(2));
  data.emplace_back(vec2(0, 1), label3(2));
  CHECK_THROWS_AS(train_logreg(data, LabelScheme::ThreeClass), DataError);
}

TEST_CASE("loss gradient agrees with finite differences") {
  Rng rng(71);
  std::vector<LabeledVector> data;
  for (int i = 0; i < 12; ++i) {
    Eigen::VectorXd x(3);
    for (int j = 0; j < 3; ++j) x(j) = rng.uniform(-2.0, 2.0);
    data.emplace_back(x, label3(static_cast<int>(rng.below(3))));
  }
  Eigen::MatrixXd w(3, 3);
  Eigen::VectorXd b(3);
  for (int r = 0; r < 3; ++r) {
    b(r) = rng.uniform(-0.5, 0.5);
    for (int c = 0; c < 3; ++c) w(r, c) = rng.uniform(-0.5, 0.5);
  }

  Eigen::MatrixXd gw;
  Eigen::VectorXd gb;
  logreg_loss_and_gradient(data, LabelScheme::ThreeClass, w, b, 0.01, gw, gb);

  const double step = 1e-6;
  Eigen::MatrixXd gw_tmp;
  Eigen::VectorXd gb_tmp;
  auto loss_at = [&](const Eigen::MatrixXd& wx, const Eigen::VectorXd& bx) {
    return logreg_loss_and_gradient(data, LabelScheme::ThreeClass, wx, bx, 0.01, gw_tmp, gb_tmp);
  };
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      Eigen::MatrixXd up = w, down = w;
      up(r, c) += step;
      down(r, c) -= step;
      const double fd = (loss_at(up, b) - loss_at(down, b)) / (2 * step);
      CHECK(std::abs(fd - gw(r, c)) <= 1e-6 * std::max(1.0, std::abs(gw(r, c))));
    }
    Eigen::VectorXd up = b, down = b;
    up(r) += step;
    down(r) -= step;
    const double fd = (loss_at(w, up) - loss_at(w, down)) / (2 * step);
    CHECK(std::abs(fd - gb(r)) <= 1e-6 * std::max(1.0, std::abs(gb(r))));
  }
}

TEST_CASE("training loss never increases with more iterations") {
  const auto data = separable_toy();
  Eigen::MatrixXd gw;
  Eigen::VectorXd gb;
  double previous = std::numeric_limits<double>::infinity();
  for (int iters : {1, 2, 4, 8, 16, 32}) {
    const auto model = train_logreg(data, LabelScheme::ThreeClass, 0.01, 1e-12, iters);
    const double loss =
        logreg_loss_and_gradient(data, LabelScheme::ThreeClass, model.weights, model.bias, 0.01,
                                 gw, gb);
    CHECK(loss <= previous + 1e-12);
    previous = loss;
  }
}

TEST_CASE("prediction argmax and canonical tie-break") {
  LogRegModel model;
  model.scheme = LabelScheme::ThreeClass;
  model.weights = Eigen::MatrixXd::Zero(3, 1);
  model.bias = Eigen::VectorXd(3);
  model.bias << 2.0, 1.0, 0.5;
  CHECK(predict_logreg(model, Eigen::VectorXd::Zero(1)).token() == "neg");

  model.bias << 1.0, 0.0, 1.0;  // tie between neg and pos
  CHECK(predict_logreg(model, Eigen::VectorXd::Zero(1)).token() == "neg");

  CHECK_THROWS_AS(predict_logreg(model, Eigen::VectorXd::Zero(2)), UsageError);
}

}  // TEST_SUITE
