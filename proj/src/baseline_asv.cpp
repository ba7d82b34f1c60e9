#include "snasa/baseline_asv.hpp"

#include <algorithm>
#include <cmath>

#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/strings.hpp"

namespace snasa {

WordVectorTable load_word_vectors(const std::string& path) {
  const auto lines = read_lines(path);
  WordVectorTable table;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_whitespace(lines[i]);
    if (fields.size() < 2) {
      throw DataError("word-vector row needs a word and at least one value at " + path + ":" +
                      std::to_string(i + 1));
    }
    const int dim = static_cast<int>(fields.size()) - 1;
    if (table.dimension == 0) {
      table.dimension = dim;
    } else if (dim != table.dimension) {
      throw DataError("inconsistent vector dimension " + std::to_string(dim) + " (expected " +
                      std::to_string(table.dimension) + ") at " + path + ":" +
                      std::to_string(i + 1));
    }
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) {
      v(j) = parse_double(fields[static_cast<std::size_t>(j) + 1], "word vector");
    }
    if (!table.vectors.emplace(std::string(fields[0]), std::move(v)).second) {
      throw DataError("duplicate word '" + std::string(fields[0]) + "' at " + path + ":" +
                      std::to_string(i + 1));
    }
  }
  if (table.vectors.empty()) {
    throw DataError("word-vector file '" + path + "' has no vectors");
  }
  return table;
}

Eigen::VectorXd average_sentence_vector(std::string_view text, const WordVectorTable& table) {
  const auto tokens = split_whitespace(text);
  if (tokens.empty()) throw DataError("cannot average an all-whitespace sentence");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(table.dimension);
  std::size_t found = 0;
  for (const auto token : tokens) {
    const auto it = table.vectors.find(std::string(token));
    if (it == table.vectors.end()) continue;
    sum += it->second;
    ++found;
  }
  if (found == 0) {
    warn("all tokens out of vocabulary; using the zero vector");
    return sum;
  }
  return sum / static_cast<double>(found);
}

double logreg_loss_and_gradient(const std::vector<LabeledVector>& data, LabelScheme scheme,
                                const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias,
                                double lambda, Eigen::MatrixXd& grad_weights,
                                Eigen::VectorXd& grad_bias) {
  const auto n = static_cast<double>(data.size());
  grad_weights = Eigen::MatrixXd::Zero(weights.rows(), weights.cols());
  grad_bias = Eigen::VectorXd::Zero(bias.size());

  double loss = 0.0;
  for (const auto& [x, label] : data) {
    Eigen::VectorXd scores = weights * x + bias;
    const double peak = scores.maxCoeff();
    const Eigen::VectorXd expd = (scores.array() - peak).exp();
    const double z = expd.sum();
    const Eigen::VectorXd probs = expd / z;
    loss -= std::log(probs(label.index()));

    Eigen::VectorXd delta = probs;
    delta(label.index()) -= 1.0;
    grad_weights.noalias() += delta * x.transpose();
    grad_bias += delta;
  }
  loss /= n;
  grad_weights /= n;
  grad_bias /= n;

  loss += 0.5 * lambda * weights.squaredNorm();
  grad_weights += lambda * weights;
  return loss;
}

LogRegModel train_logreg(const std::vector<LabeledVector>& data, LabelScheme scheme,
                         double lambda, double tol, int max_iters) {
  if (data.empty()) throw DataError("train_logreg: no training data");
  if (lambda < 0.0) throw UsageError("lambda must be >= 0");
  if (!(tol > 0.0)) throw UsageError("tol must be > 0");

  const auto dim = data.front().first.size();
  std::vector<bool> seen(class_count(scheme), false);
  for (const auto& [x, label] : data) {
    if (x.size() != dim) throw DataError("train_logreg: inconsistent feature dimension");
    seen[label.index()] = true;
  }
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw DataError("train_logreg: need at least 2 classes in the training data");
  }

  const auto k = static_cast<Eigen::Index>(class_count(scheme));
  LogRegModel model;
  model.scheme = scheme;
  model.lambda = lambda;
  model.weights = Eigen::MatrixXd::Zero(k, dim);
  model.bias = Eigen::VectorXd::Zero(k);

  Eigen::MatrixXd grad_w;
  Eigen::VectorXd grad_b;
  double loss = logreg_loss_and_gradient(data, scheme, model.weights, model.bias, lambda,
                                         grad_w, grad_b);
  double step = 1.0;
  constexpr double kArmijo = 1e-4;

  for (int iter = 0; iter < max_iters; ++iter) {
    const double grad_inf = std::max(grad_w.cwiseAbs().maxCoeff(), grad_b.cwiseAbs().maxCoeff());
    if (grad_inf < tol) break;

    const double grad_sq = grad_w.squaredNorm() + grad_b.squaredNorm();
    Eigen::MatrixXd next_w;
    Eigen::VectorXd next_b;
    Eigen::MatrixXd next_gw;
    Eigen::VectorXd next_gb;
    double next_loss = loss;
    bool accepted = false;
    for (int half = 0; half < 60; ++half) {
      next_w = model.weights - step * grad_w;
      next_b = model.bias - step * grad_b;
      next_loss = logreg_loss_and_gradient(data, scheme, next_w, next_b, lambda, next_gw, next_gb);
      if (next_loss <= loss - kArmijo * step * grad_sq) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // step underflow; gradient is as good as flat
    model.weights = std::move(next_w);
    model.bias = std::move(next_b);
    grad_w = std::move(next_gw);
    grad_b = std::move(next_gb);
    loss = next_loss;
    step = std::min(step * 2.0, 1.0e6);
  }
  return model;
}

SentimentLabel predict_logreg(const LogRegModel& model, const Eigen::VectorXd& features) {
  if (features.size() != model.weights.cols()) {
    throw UsageError("predict_logreg: feature dimension mismatch");
  }
  const Eigen::VectorXd scores = model.weights * features + model.bias;
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < scores.size(); ++c) {
    if (scores(c) > scores(best)) best = c;
  }
  return SentimentLabel(model.scheme, static_cast<std::uint8_t>(best));
}

}  // namespace snasa
