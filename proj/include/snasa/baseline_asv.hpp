#pragma once

#include <Eigen/Dense>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "snasa/labels.hpp"

namespace snasa {

struct WordVectorTable {
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  int dimension = 0;
};

// Text file, one `word v1 v2 ... vk` per line, consistent k.
WordVectorTable load_word_vectors(const std::string& path);

// Mean of the vectors of the tokens found in the table; OOV tokens are
// skipped and the divisor counts only found tokens. All tokens OOV
// yields the zero vector with a warning.
Eigen::VectorXd average_sentence_vector(std::string_view text, const WordVectorTable& table);

// Multinomial logistic regression, classes in canonical order.
struct LogRegModel {
  LabelScheme scheme = LabelScheme::ThreeClass;
  Eigen::MatrixXd weights;  // classes x dim
  Eigen::VectorXd bias;     // classes
  double lambda = 0.0;
};

using LabeledVector = std::pair<Eigen::VectorXd, SentimentLabel>;

// Mean cross-entropy plus (lambda/2)|W|^2 (bias unregularized) and its
// exact gradient. Exposed so the training path can be verified against
// finite differences.
double logreg_loss_and_gradient(const std::vector<LabeledVector>& data, LabelScheme scheme,
                                const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias,
                                double lambda, Eigen::MatrixXd& grad_weights,
                                Eigen::VectorXd& grad_bias);

// Full-batch gradient descent from zero init with a backtracking step
// size (the loss never increases between iterations). Stops when the
// gradient infinity-norm drops below tol or after max_iters.
LogRegModel train_logreg(const std::vector<LabeledVector>& data, LabelScheme scheme,
                         double lambda = 0.001, double tol = 0.001, int max_iters = 2000);

SentimentLabel predict_logreg(const LogRegModel& model, const Eigen::VectorXd& features);

}  // namespace snasa
