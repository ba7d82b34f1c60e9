#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "snasa/featurizer.hpp"

namespace snasa {

// One LSTM direction. The four gates are fused row-wise into single
// matrices; rows [0,h) input, [h,2h) forget, [2h,3h) cell candidate,
// [3h,4h) output.
struct LstmCellParams {
  Eigen::MatrixXd w_input;      // 4h x e
  Eigen::MatrixXd w_recurrent;  // 4h x h
  Eigen::VectorXd bias;         // 4h

  int hidden_size() const { return static_cast<int>(w_recurrent.cols()); }
  int input_size() const { return static_cast<int>(w_input.cols()); }
};

struct EncoderDims {
  std::size_t vocab_size = 0;
  int embedding = 64;
  int hidden = 64;
  int output = 128;

  friend bool operator==(const EncoderDims&, const EncoderDims&) = default;
};

// The single shared parameter set. Both towers of the pair network are
// this one record; there is no second copy.
struct SiameseEncoderParams {
  Eigen::MatrixXd embeddings;  // |V| x e, row 0 = OOV
  LstmCellParams fw;
  LstmCellParams bw;
  Eigen::MatrixXd dense_w;     // d x 2h, applied to [fw_state; bw_state]
  Eigen::VectorXd dense_b;     // d

  EncoderDims dims() const {
    return {static_cast<std::size_t>(embeddings.rows()),
            static_cast<int>(embeddings.cols()), fw.hidden_size(),
            static_cast<int>(dense_w.rows())};
  }
};

// Gradients mirror the parameter layout exactly; reusing the struct keeps
// every helper below applicable to both.
using Gradients = SiameseEncoderParams;

// Fixed block order: embeddings, fw.{w_input,w_recurrent,bias},
// bw.{...}, dense_w, dense_b. Init draws, norms, updates, and the
// acceptance laws all rely on this enumeration.
template <typename Params, typename Fn>
void visit_blocks(Params& p, Fn&& fn) {
  fn("embeddings", p.embeddings);
  fn("fw.w_input", p.fw.w_input);
  fn("fw.w_recurrent", p.fw.w_recurrent);
  fn("fw.bias", p.fw.bias);
  fn("bw.w_input", p.bw.w_input);
  fn("bw.w_recurrent", p.bw.w_recurrent);
  fn("bw.bias", p.bw.bias);
  fn("dense_w", p.dense_w);
  fn("dense_b", p.dense_b);
}

// Glorot-style uniform draws per logical matrix (per-gate fans for the
// LSTM blocks), biases zero except the forget gate at 1. Deterministic
// in (dims, seed).
SiameseEncoderParams init_params(const EncoderDims& dims, std::uint64_t seed);

Gradients zeros_like(const SiameseEncoderParams& params);
double global_norm(const Gradients& grads);
void scale(Gradients& grads, double factor);
void add_scaled(SiameseEncoderParams& dst, const Gradients& src, double factor);

// Throws NumericError naming the first offending block.
void check_finite(const SiameseEncoderParams& params, const std::string& what);

struct SentimentEmbedding {
  Eigen::VectorXd values;  // length d, entrywise >= 0
  std::string sentence_id;
};

// Everything the backward pass needs from one forward run. Rows of the
// per-direction caches are in processing order (bw rows are the sentence
// reversed).
struct EncodeTrace {
  std::vector<std::int32_t> ids;
  Eigen::MatrixXd inputs;   // T x e, sentence order
  struct Direction {
    Eigen::MatrixXd gates;  // T x 4h, post-activation (i, f, g, o)
    Eigen::MatrixXd cells;  // T x h
    Eigen::MatrixXd hidden; // T x h
  } fw, bw;
  Eigen::VectorXd concat;       // 2h, [fw final; bw final]
  Eigen::VectorXd preact;       // d, dense_w * concat + dense_b
  Eigen::VectorXd output;       // d, max(0, preact)
};

// The encoder: embedding lookup, forward and backward LSTM passes from
// zero states, concatenation of the two final hidden states, dense
// projection, elementwise ReLU. Pure in (seq, params).
SentimentEmbedding encode(const TrigramSequence& seq, const SiameseEncoderParams& params);

// Same computation, keeping the intermediate states for backpropagation.
SentimentEmbedding encode_traced(const TrigramSequence& seq, const SiameseEncoderParams& params,
                                 EncodeTrace& trace);

// One tower's parameter gradients, as fresh values. Keeping tower
// results separate lets a pair combine them with a single commutative
// add per entry, which is what makes "same pair fed twice accumulates
// exactly twice" and the tower-swap law hold to the bit.
struct TowerGradients {
  Eigen::MatrixXd fw_w_input, fw_w_recurrent;
  Eigen::VectorXd fw_bias;
  Eigen::MatrixXd bw_w_input, bw_w_recurrent;
  Eigen::VectorXd bw_bias;
  Eigen::MatrixXd dense_w;
  Eigen::VectorXd dense_b;
  Eigen::MatrixXd d_inputs;  // T x e, sentence order, both directions combined
};

// Backpropagates d(loss)/d(output) through the dense layer, both LSTM
// directions over every timestep, and down to the embedded inputs.
// ReLU passes gradient only where the pre-activation is strictly
// positive.
TowerGradients backprop_encoding(const EncodeTrace& trace, const Eigen::VectorXd& output_grad,
                                 const SiameseEncoderParams& params);

// dot(a,b) / (|a||b|); defined as 0 when either norm is zero (with a
// warning): ReLU outputs can legally be all-zero.
double cosine_similarity(const SentimentEmbedding& a, const SentimentEmbedding& b);
double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// |a - b|, the plain Euclidean distance between embeddings.
double euclidean_energy(const SentimentEmbedding& a, const SentimentEmbedding& b);

}  // namespace snasa
