#include "snasa/encoder.hpp"

#include <cmath>

#include "snasa/error.hpp"
#include "snasa/rng.hpp"

namespace snasa {

namespace {

// Row-major draw order so the layout, not Eigen storage, defines the stream.
template <typename Mat>
void fill_uniform(Mat& m, double radius, Rng& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rng.uniform(-radius, radius);
    }
  }
}

double glorot_radius(double fan_in, double fan_out) {
  return std::sqrt(6.0 / (fan_in + fan_out));
}

inline Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& x) {
  return 1.0 / (1.0 + (-x).exp());
}

struct DirectionPass {
  // inputs_proc rows are in processing order.
  static void forward(const Eigen::MatrixXd& inputs_proc, const LstmCellParams& cell,
                      EncodeTrace::Direction& out) {
    const Eigen::Index T = inputs_proc.rows();
    const int h = cell.hidden_size();
    out.gates.resize(T, 4 * h);
    out.cells.resize(T, h);
    out.hidden.resize(T, h);

    Eigen::MatrixXd input_preacts = inputs_proc * cell.w_input.transpose();  // T x 4h
    Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(h);
    Eigen::VectorXd c_prev = Eigen::VectorXd::Zero(h);
    Eigen::VectorXd preact(4 * h);
    Eigen::ArrayXd gi(h), gf(h), gg(h), go(h), c(h), hd(h);
    for (Eigen::Index t = 0; t < T; ++t) {
      preact.noalias() = cell.w_recurrent * h_prev;
      preact += input_preacts.row(t).transpose() + cell.bias;
      gi = sigmoid(preact.segment(0, h).array());
      gf = sigmoid(preact.segment(h, h).array());
      gg = preact.segment(2 * h, h).array().tanh();
      go = sigmoid(preact.segment(3 * h, h).array());
      c = gf * c_prev.array() + gi * gg;
      hd = go * c.tanh();

      out.gates.row(t).segment(0, h) = gi;
      out.gates.row(t).segment(h, h) = gf;
      out.gates.row(t).segment(2 * h, h) = gg;
      out.gates.row(t).segment(3 * h, h) = go;
      out.cells.row(t) = c;
      out.hidden.row(t) = hd;
      c_prev = c.matrix();
      h_prev = hd.matrix();
    }
  }

  // Computes parameter gradients for one direction and returns the
  // gradient w.r.t. inputs_proc. final_grad is d(loss)/d(final hidden
  // state).
  static Eigen::MatrixXd backward(const Eigen::MatrixXd& inputs_proc,
                                  const LstmCellParams& cell,
                                  const EncodeTrace::Direction& trace,
                                  const Eigen::VectorXd& final_grad,
                                  Eigen::MatrixXd& grad_w_input,
                                  Eigen::MatrixXd& grad_w_recurrent,
                                  Eigen::VectorXd& grad_bias) {
    const Eigen::Index T = inputs_proc.rows();
    const int h = cell.hidden_size();
    Eigen::MatrixXd d_gate_preacts(T, 4 * h);

    Eigen::ArrayXd dh = final_grad.array();
    Eigen::ArrayXd dc = Eigen::ArrayXd::Zero(h);
    Eigen::VectorXd da(4 * h);
    Eigen::VectorXd dh_vec(h);
    Eigen::ArrayXd gi(h), gf(h), gg(h), go(h), c_tanh(h);
    Eigen::ArrayXd d_out(h), d_in(h), d_cand(h), d_forget(h);
    for (Eigen::Index t = T - 1; t >= 0; --t) {
      gi = trace.gates.row(t).segment(0, h).transpose().array();
      gf = trace.gates.row(t).segment(h, h).transpose().array();
      gg = trace.gates.row(t).segment(2 * h, h).transpose().array();
      go = trace.gates.row(t).segment(3 * h, h).transpose().array();
      c_tanh = trace.cells.row(t).transpose().array().tanh();

      d_out = dh * c_tanh;
      dc += dh * go * (1.0 - c_tanh.square());
      d_in = dc * gg;
      d_cand = dc * gi;
      if (t > 0) {
        d_forget = dc * trace.cells.row(t - 1).transpose().array();
      } else {
        d_forget.setZero();  // c_{-1} is the zero initial state
      }

      da.segment(0, h) = d_in * gi * (1.0 - gi);
      da.segment(h, h) = d_forget * gf * (1.0 - gf);
      da.segment(2 * h, h) = d_cand * (1.0 - gg.square());
      da.segment(3 * h, h) = d_out * go * (1.0 - go);
      d_gate_preacts.row(t) = da;

      dh_vec.noalias() = cell.w_recurrent.transpose() * da;
      dh = dh_vec.array();
      dc *= gf;
    }

    grad_w_input.noalias() = d_gate_preacts.transpose() * inputs_proc;
    grad_w_recurrent.setZero(cell.w_recurrent.rows(), cell.w_recurrent.cols());
    if (T > 1) {
      grad_w_recurrent.noalias() =
          d_gate_preacts.bottomRows(T - 1).transpose() * trace.hidden.topRows(T - 1);
    }
    grad_bias = d_gate_preacts.colwise().sum();
    return d_gate_preacts * cell.w_input;  // T x e
  }
};

}  // namespace

SiameseEncoderParams init_params(const EncoderDims& dims, std::uint64_t seed) {
  if (dims.vocab_size < 1 || dims.embedding < 1 || dims.hidden < 1 || dims.output < 1) {
    throw UsageError("all encoder dimensions must be >= 1");
  }
  const auto V = static_cast<Eigen::Index>(dims.vocab_size);
  const int e = dims.embedding;
  const int h = dims.hidden;
  const int d = dims.output;

  SiameseEncoderParams p;
  Rng rng(seed);

  p.embeddings.resize(V, e);
  fill_uniform(p.embeddings, glorot_radius(static_cast<double>(V), e), rng);

  for (LstmCellParams* cell : {&p.fw, &p.bw}) {
    cell->w_input.resize(4 * h, e);
    cell->w_recurrent.resize(4 * h, h);
    cell->bias = Eigen::VectorXd::Zero(4 * h);
    // Per-gate fans: each gate block is an h x e / h x h matrix.
    fill_uniform(cell->w_input, glorot_radius(e, h), rng);
    fill_uniform(cell->w_recurrent, glorot_radius(h, h), rng);
    cell->bias.segment(h, h).setOnes();  // forget gate opens at init
  }

  p.dense_w.resize(d, 2 * h);
  fill_uniform(p.dense_w, glorot_radius(2 * h, d), rng);
  p.dense_b = Eigen::VectorXd::Zero(d);
  return p;
}

Gradients zeros_like(const SiameseEncoderParams& params) {
  Gradients g = params;
  visit_blocks(g, [](const char*, auto& block) { block.setZero(); });
  return g;
}

double global_norm(const Gradients& grads) {
  double sum = 0.0;
  visit_blocks(grads, [&](const char*, const auto& block) { sum += block.squaredNorm(); });
  return std::sqrt(sum);
}

void scale(Gradients& grads, double factor) {
  visit_blocks(grads, [&](const char*, auto& block) { block *= factor; });
}

namespace {
template <typename Mat>
void add_block(Mat& dst, const Mat& src, double factor, const char* name) {
  if (dst.rows() != src.rows() || dst.cols() != src.cols()) {
    throw UsageError(std::string("shape mismatch in block ") + name);
  }
  dst += factor * src;
}
}  // namespace

void add_scaled(SiameseEncoderParams& dst, const Gradients& src, double factor) {
  add_block(dst.embeddings, src.embeddings, factor, "embeddings");
  add_block(dst.fw.w_input, src.fw.w_input, factor, "fw.w_input");
  add_block(dst.fw.w_recurrent, src.fw.w_recurrent, factor, "fw.w_recurrent");
  add_block(dst.fw.bias, src.fw.bias, factor, "fw.bias");
  add_block(dst.bw.w_input, src.bw.w_input, factor, "bw.w_input");
  add_block(dst.bw.w_recurrent, src.bw.w_recurrent, factor, "bw.w_recurrent");
  add_block(dst.bw.bias, src.bw.bias, factor, "bw.bias");
  add_block(dst.dense_w, src.dense_w, factor, "dense_w");
  add_block(dst.dense_b, src.dense_b, factor, "dense_b");
}

void check_finite(const SiameseEncoderParams& params, const std::string& what) {
  visit_blocks(params, [&](const char* name, const auto& block) {
    if (!block.allFinite()) {
      throw NumericError("non-finite values in " + what + " block '" + name + "'");
    }
  });
}

SentimentEmbedding encode(const TrigramSequence& seq, const SiameseEncoderParams& params) {
  EncodeTrace trace;
  return encode_traced(seq, params, trace);
}

SentimentEmbedding encode_traced(const TrigramSequence& seq, const SiameseEncoderParams& params,
                                 EncodeTrace& trace) {
  if (seq.ids.empty()) {
    throw DataError("cannot encode an empty trigram sequence");
  }
  const auto T = static_cast<Eigen::Index>(seq.ids.size());
  const auto V = params.embeddings.rows();
  const int e = static_cast<int>(params.embeddings.cols());
  const int h = params.fw.hidden_size();

  trace.ids = seq.ids;
  trace.inputs.resize(T, e);
  for (Eigen::Index t = 0; t < T; ++t) {
    const std::int32_t id = seq.ids[static_cast<std::size_t>(t)];
    if (id < 0 || id >= V) {
      throw DataError("trigram id " + std::to_string(id) + " out of range for |V|=" +
                      std::to_string(V));
    }
    trace.inputs.row(t) = params.embeddings.row(id);
  }

  DirectionPass::forward(trace.inputs, params.fw, trace.fw);
  const Eigen::MatrixXd reversed = trace.inputs.colwise().reverse();
  DirectionPass::forward(reversed, params.bw, trace.bw);

  trace.concat.resize(2 * h);
  trace.concat.head(h) = trace.fw.hidden.row(T - 1);
  trace.concat.tail(h) = trace.bw.hidden.row(T - 1);
  trace.preact.noalias() = params.dense_w * trace.concat;
  trace.preact += params.dense_b;
  trace.output = trace.preact.cwiseMax(0.0);

  return {trace.output, seq.sentence_id};
}

TowerGradients backprop_encoding(const EncodeTrace& trace, const Eigen::VectorXd& output_grad,
                                 const SiameseEncoderParams& params) {
  const auto T = trace.inputs.rows();
  const int h = params.fw.hidden_size();
  TowerGradients out;

  // ReLU subgradient: zero at and below zero pre-activation.
  Eigen::VectorXd d_preact = output_grad;
  for (Eigen::Index i = 0; i < d_preact.size(); ++i) {
    if (trace.preact(i) <= 0.0) d_preact(i) = 0.0;
  }

  out.dense_w.noalias() = d_preact * trace.concat.transpose();
  out.dense_b = d_preact;
  const Eigen::VectorXd d_concat = params.dense_w.transpose() * d_preact;

  const Eigen::MatrixXd d_inputs_fw =
      DirectionPass::backward(trace.inputs, params.fw, trace.fw, d_concat.head(h),
                              out.fw_w_input, out.fw_w_recurrent, out.fw_bias);
  const Eigen::MatrixXd reversed = trace.inputs.colwise().reverse();
  const Eigen::MatrixXd d_inputs_bw =
      DirectionPass::backward(reversed, params.bw, trace.bw, d_concat.tail(h),
                              out.bw_w_input, out.bw_w_recurrent, out.bw_bias);

  out.d_inputs.resize(T, trace.inputs.cols());
  for (Eigen::Index t = 0; t < T; ++t) {
    out.d_inputs.row(t) = d_inputs_fw.row(t) + d_inputs_bw.row(T - 1 - t);
  }
  return out;
}

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw UsageError("cosine_similarity: dimension mismatch");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    warn("cosine of a zero-norm embedding defined as 0");
    return 0.0;
  }
  return a.dot(b) / (na * nb);
}

double cosine_similarity(const SentimentEmbedding& a, const SentimentEmbedding& b) {
  return cosine_similarity(a.values, b.values);
}

double euclidean_energy(const SentimentEmbedding& a, const SentimentEmbedding& b) {
  if (a.values.size() != b.values.size()) {
    throw UsageError("euclidean_energy: dimension mismatch");
  }
  return (a.values - b.values).norm();
}

}  // namespace snasa
