#include "snasa/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <thread>

#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/rng.hpp"
#include "snasa/strings.hpp"

namespace snasa {

namespace {

// Independent sub-streams from one user seed (splitmix64 finalizer).
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + tag * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kInitTag = 1;
constexpr std::uint64_t kPairsTag = 2;
constexpr std::uint64_t kShuffleTag = 3;

void require_label(int label) {
  if (label != 1 && label != -1) {
    throw UsageError("pair label must be +1 or -1, got " + std::to_string(label));
  }
}

void require_margin(double margin) {
  if (!(margin > 0.0 && margin < 1.0)) {
    throw UsageError("margin must lie in (0,1), got " + format_double(margin));
  }
}

}  // namespace

void TrainConfig::validate() const {
  require_margin(margin);
  if (!(learning_rate > 0.0)) throw UsageError("learning_rate must be > 0");
  if (epochs < 1) throw UsageError("epochs must be >= 1");
  if (batch_size < 1) throw UsageError("batch_size must be >= 1");
  if (negatives_per_positive < 1) throw UsageError("negatives_per_positive must be >= 1");
  if (positives_per_sentence < 1) throw UsageError("positives_per_sentence must be >= 1");
  if (optimizer == OptimizerKind::SgdMomentum && !(momentum >= 0.0 && momentum < 1.0)) {
    throw UsageError("momentum must lie in [0,1)");
  }
  if (embedding_dim < 1 || hidden_dim < 1 || output_dim < 1) {
    throw UsageError("encoder dimensions must be >= 1");
  }
  if (threads < 1) throw UsageError("threads must be >= 1");
}

double contrastive_loss(double cosine, int label, double margin) {
  require_label(label);
  require_margin(margin);
  if (label == 1) return 1.0 - cosine;
  return std::max(0.0, cosine - margin);
}

BatchLoss batch_loss(const PairBatch& batch, const SiameseEncoderParams& params, double margin) {
  if (batch.empty()) throw DataError("batch_loss of an empty batch");
  BatchLoss out;
  out.per_pair.reserve(batch.size());
  for (const auto& pair : batch) {
    const SentimentEmbedding p = encode(pair.poor, params);
    const SentimentEmbedding r = encode(pair.rich, params);
    const double loss = contrastive_loss(cosine_similarity(p, r), pair.label, margin);
    out.per_pair.push_back(loss);
    out.total += loss;  // fixed batch-order summation
  }
  return out;
}

double backward_pair(const TrigramSequence& poor, const TrigramSequence& rich, int label,
                     const SiameseEncoderParams& params, double margin, Gradients& grads) {
  require_label(label);
  require_margin(margin);

  EncodeTrace trace_p, trace_r;
  const SentimentEmbedding sp = encode_traced(poor, params, trace_p);
  const SentimentEmbedding sr = encode_traced(rich, params, trace_r);
  if (!trace_p.preact.allFinite() || !trace_r.preact.allFinite()) {
    throw NumericError("non-finite dense pre-activation while encoding a pair");
  }

  const double norm_p = sp.values.norm();
  const double norm_r = sr.values.norm();
  const double cosine = cosine_similarity(sp, sr);
  const double loss = contrastive_loss(cosine, label, margin);

  // d(loss)/d(cosine): -1 for positives, +1 for negatives past the
  // margin, 0 on the flat hinge.
  double d_cosine;
  if (label == 1) {
    d_cosine = -1.0;
  } else {
    d_cosine = cosine > margin ? 1.0 : 0.0;
  }
  if (d_cosine == 0.0) return loss;
  // A zero-norm side has cosine pinned at 0; no gradient flows.
  if (norm_p == 0.0 || norm_r == 0.0) return loss;

  const Eigen::VectorXd d_p =
      d_cosine * (sr.values / (norm_p * norm_r) - (cosine / (norm_p * norm_p)) * sp.values);
  const Eigen::VectorXd d_r =
      d_cosine * (sp.values / (norm_p * norm_r) - (cosine / (norm_r * norm_r)) * sr.values);

  const TowerGradients tp = backprop_encoding(trace_p, d_p, params);
  const TowerGradients tr = backprop_encoding(trace_r, d_r, params);

  // Tower results merge with one commutative add per entry, then land in
  // the accumulator with a second single add. This keeps accumulation
  // linear to the bit and symmetric under swapping the towers.
  grads.fw.w_input += tp.fw_w_input + tr.fw_w_input;
  grads.fw.w_recurrent += tp.fw_w_recurrent + tr.fw_w_recurrent;
  grads.fw.bias += tp.fw_bias + tr.fw_bias;
  grads.bw.w_input += tp.bw_w_input + tr.bw_w_input;
  grads.bw.w_recurrent += tp.bw_w_recurrent + tr.bw_w_recurrent;
  grads.bw.bias += tp.bw_bias + tr.bw_bias;
  grads.dense_w += tp.dense_w + tr.dense_w;
  grads.dense_b += tp.dense_b + tr.dense_b;

  // Embedding rows: sum each tower's contributions per row first (a row
  // can be hit several times within one tower), then one add per side.
  std::map<std::int32_t, Eigen::RowVectorXd> rows_p, rows_r;
  auto collect = [](const TowerGradients& tower, const std::vector<std::int32_t>& ids,
                    std::map<std::int32_t, Eigen::RowVectorXd>& rows) {
    for (Eigen::Index t = 0; t < tower.d_inputs.rows(); ++t) {
      const auto id = ids[static_cast<std::size_t>(t)];
      auto [it, inserted] = rows.try_emplace(id, tower.d_inputs.cols());
      if (inserted) {
        it->second = tower.d_inputs.row(t);
      } else {
        it->second += tower.d_inputs.row(t);
      }
    }
  };
  collect(tp, trace_p.ids, rows_p);
  collect(tr, trace_r.ids, rows_r);
  for (const auto& [id, row] : rows_p) {
    const auto other = rows_r.find(id);
    if (other != rows_r.end()) {
      grads.embeddings.row(id) += row + other->second;
    } else {
      grads.embeddings.row(id) += row;
    }
  }
  for (const auto& [id, row] : rows_r) {
    if (rows_p.find(id) == rows_p.end()) {
      grads.embeddings.row(id) += row;
    }
  }
  return loss;
}

double backward_pair(const TrainingPair& pair, const SiameseEncoderParams& params, double margin,
                     Gradients& grads) {
  return backward_pair(pair.poor, pair.rich, pair.label, params, margin, grads);
}

void Optimizer::step(SiameseEncoderParams& params, const Gradients& grads) {
  double factor = 1.0;
  if (cfg_.clip_norm > 0.0) {
    const double norm = global_norm(grads);
    if (norm > cfg_.clip_norm) factor = cfg_.clip_norm / norm;
  }

  if (cfg_.optimizer == OptimizerKind::Sgd) {
    add_scaled(params, grads, -cfg_.learning_rate * factor);
    return;
  }

  if (!velocity_) velocity_ = zeros_like(grads);
  visit_blocks(*velocity_, [&](const char*, auto& block) { block *= cfg_.momentum; });
  add_scaled(*velocity_, grads, factor);
  add_scaled(params, *velocity_, -cfg_.learning_rate);
}

std::vector<PairSpec> generate_pairs(const Dataset& poor, const Dataset& rich,
                                     int negatives_per_positive, int positives_per_sentence,
                                     std::uint64_t seed) {
  if (poor.sentences.empty() || rich.sentences.empty()) {
    throw DataError("generate_pairs needs nonempty datasets");
  }
  if (poor.scheme != rich.scheme) {
    throw DataError("generate_pairs: datasets use different label schemes");
  }
  if (negatives_per_positive < 1 || positives_per_sentence < 1) {
    throw UsageError("pair counts must be >= 1");
  }

  const std::size_t k = class_count(rich.scheme);
  std::vector<std::vector<std::uint32_t>> same(k), other(k);
  for (std::uint32_t j = 0; j < rich.sentences.size(); ++j) {
    const auto cls = rich.sentences[j].label.index();
    for (std::size_t c = 0; c < k; ++c) {
      (c == cls ? same[c] : other[c]).push_back(j);
    }
  }
  for (const auto& s : poor.sentences) {
    const auto c = s.label.index();
    if (same[c].empty() || other[c].empty()) {
      throw DataError("class '" + std::string(s.label.token()) +
                      "' lacks rich-side sentences of the " +
                      (same[c].empty() ? std::string("same") : std::string("other")) +
                      " sentiment");
    }
  }

  Rng rng(seed);
  std::vector<PairSpec> pairs;
  pairs.reserve(poor.sentences.size() *
                static_cast<std::size_t>(positives_per_sentence) *
                static_cast<std::size_t>(1 + negatives_per_positive));
  std::vector<bool> warned_class(k, false);

  for (std::uint32_t i = 0; i < poor.sentences.size(); ++i) {
    const auto c = poor.sentences[i].label.index();
    const auto& pos_pool = same[c];
    const auto& neg_pool = other[c];

    // Shrink the per-sentence counts so both sides stay drawable without
    // replacement and the positive:negative ratio stays exact.
    std::size_t n_pos = static_cast<std::size_t>(positives_per_sentence);
    n_pos = std::min(n_pos, pos_pool.size());
    n_pos = std::min(n_pos, neg_pool.size() / static_cast<std::size_t>(negatives_per_positive));
    if (n_pos == 0) {
      throw DataError("class '" + std::string(poor.sentences[i].label.token()) +
                      "' cannot draw " + std::to_string(negatives_per_positive) +
                      " negatives per positive");
    }
    if (n_pos < static_cast<std::size_t>(positives_per_sentence) && !warned_class[c]) {
      warn("class '" + std::string(poor.sentences[i].label.token()) +
           "' supports only " + std::to_string(n_pos) + " positives per sentence");
      warned_class[c] = true;
    }
    const std::size_t n_neg = n_pos * static_cast<std::size_t>(negatives_per_positive);

    for (const std::size_t p : rng.sample_without_replacement(pos_pool.size(), n_pos)) {
      pairs.push_back({i, pos_pool[p], +1});
    }
    for (const std::size_t n : rng.sample_without_replacement(neg_pool.size(), n_neg)) {
      pairs.push_back({i, neg_pool[n], -1});
    }
  }
  return pairs;
}

void save_pair_cache(const std::vector<PairSpec>& pairs, const Dataset& poor,
                     const Dataset& rich, const std::string& path) {
  std::string out;
  for (const auto& p : pairs) {
    out += poor.sentences[p.poor_index].id;
    out += '\t';
    out += rich.sentences[p.rich_index].id;
    out += '\t';
    out += p.label > 0 ? "1" : "-1";
    out += '\n';
  }
  write_file(path, out);
}

namespace {

struct EncodedCorpora {
  std::vector<TrigramSequence> poor;
  std::vector<TrigramSequence> rich;
};

EncodedCorpora encode_corpora(const Dataset& poor, const Dataset& rich,
                              const TrigramVocabulary& vocab_poor,
                              const TrigramVocabulary& vocab_rich) {
  EncodedCorpora enc;
  enc.poor.reserve(poor.sentences.size());
  for (const auto& s : poor.sentences) {
    enc.poor.push_back(encode_sentence(s.text, vocab_poor, s.id));
  }
  enc.rich.reserve(rich.sentences.size());
  for (const auto& s : rich.sentences) {
    enc.rich.push_back(encode_sentence(s.text, vocab_rich, s.id));
  }
  return enc;
}

}  // namespace

TrainResult train(const Dataset& poor, const Dataset& rich, const TrainConfig& cfg,
                  const TrigramVocabulary& vocab_poor, const TrigramVocabulary& vocab_rich,
                  const EvalHook& eval_hook, std::ostream* progress) {
  cfg.validate();
  if (poor.sentences.empty() || rich.sentences.empty()) {
    throw DataError("train needs nonempty datasets");
  }

  const EncodedCorpora enc = encode_corpora(poor, rich, vocab_poor, vocab_rich);
  const auto pairs = generate_pairs(poor, rich, cfg.negatives_per_positive,
                                    cfg.positives_per_sentence, derived_seed(cfg.seed, kPairsTag));

  EncoderDims dims;
  dims.vocab_size = std::max(vocab_poor.size(), vocab_rich.size());
  dims.embedding = cfg.embedding_dim;
  dims.hidden = cfg.hidden_dim;
  dims.output = cfg.output_dim;
  SiameseEncoderParams params = init_params(dims, derived_seed(cfg.seed, kInitTag));

  Optimizer optimizer(cfg);
  Rng shuffle_rng(derived_seed(cfg.seed, kShuffleTag));

  const int workers = std::max(1, std::min<int>(cfg.threads, cfg.batch_size));
  std::vector<Gradients> worker_grads;
  for (int w = 0; w < workers; ++w) worker_grads.push_back(zeros_like(params));
  Gradients grads = zeros_like(params);

  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;

    const std::size_t n_batches =
        (pairs.size() + static_cast<std::size_t>(cfg.batch_size) - 1) /
        static_cast<std::size_t>(cfg.batch_size);
    for (std::size_t b = 0; b < n_batches; ++b) {
      const std::size_t begin = b * static_cast<std::size_t>(cfg.batch_size);
      const std::size_t end = std::min(pairs.size(), begin + static_cast<std::size_t>(cfg.batch_size));

      double batch_total = 0.0;
      if (workers == 1) {
        visit_blocks(grads, [](const char*, auto& block) { block.setZero(); });
        for (std::size_t i = begin; i < end; ++i) {
          const auto& spec = pairs[order[i]];
          batch_total += backward_pair(enc.poor[spec.poor_index], enc.rich[spec.rich_index],
                                       spec.label, params, cfg.margin, grads);
        }
      } else {
        // Each worker owns a contiguous chunk and a private accumulator;
        // accumulators merge in worker order, so results are bit-stable
        // for a fixed worker count.
        const std::size_t span = end - begin;
        const std::size_t per = (span + static_cast<std::size_t>(workers) - 1) /
                                static_cast<std::size_t>(workers);
        std::vector<double> worker_loss(static_cast<std::size_t>(workers), 0.0);
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
          const std::size_t lo = begin + static_cast<std::size_t>(w) * per;
          const std::size_t hi = std::min(end, lo + per);
          threads.emplace_back([&, w, lo, hi] {
            auto& acc = worker_grads[static_cast<std::size_t>(w)];
            visit_blocks(acc, [](const char*, auto& block) { block.setZero(); });
            double local = 0.0;
            for (std::size_t i = lo; i < hi && i < end; ++i) {
              const auto& spec = pairs[order[i]];
              local += backward_pair(enc.poor[spec.poor_index], enc.rich[spec.rich_index],
                                     spec.label, params, cfg.margin, acc);
            }
            worker_loss[static_cast<std::size_t>(w)] = local;
          });
        }
        for (auto& t : threads) t.join();
        visit_blocks(grads, [](const char*, auto& block) { block.setZero(); });
        for (int w = 0; w < workers; ++w) {
          add_scaled(grads, worker_grads[static_cast<std::size_t>(w)], 1.0);
          batch_total += worker_loss[static_cast<std::size_t>(w)];
        }
      }

      if (!std::isfinite(batch_total)) {
        throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                           std::to_string(b + 1));
      }
      try {
        check_finite(grads, "gradients");
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " at epoch " + std::to_string(epoch) +
                           ", batch " + std::to_string(b + 1));
      }
      optimizer.step(params, grads);
      epoch_loss += batch_total;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.mean_loss = epoch_loss / static_cast<double>(pairs.size());
    if (eval_hook) rec.accuracy = eval_hook(params);
    result.log.push_back(rec);
    if (progress) {
      *progress << "epoch " << epoch << "/" << cfg.epochs
                << " mean_loss=" << format_double(rec.mean_loss);
      if (rec.accuracy) *progress << " accuracy=" << format_double(*rec.accuracy);
      *progress << "\n";
    }
  }

  result.params = std::move(params);
  return result;
}

std::string epoch_log_to_csv(const std::vector<EpochRecord>& log) {
  if (log.empty()) throw DataError("epoch log is empty");
  std::string out = "epoch,mean_loss,accuracy\n";
  for (const auto& rec : log) {
    out += std::to_string(rec.epoch);
    out += ',';
    out += format_double(rec.mean_loss);
    out += ',';
    if (rec.accuracy) out += format_double(*rec.accuracy);
    out += '\n';
  }
  return out;
}

void write_epoch_csv(const std::vector<EpochRecord>& log, const std::string& path) {
  write_file(path, epoch_log_to_csv(log));
}

}  // namespace snasa
