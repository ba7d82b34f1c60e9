#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snasa/corpus.hpp"
#include "snasa/encoder.hpp"
#include "snasa/featurizer.hpp"

namespace snasa {

enum class OptimizerKind { Sgd, SgdMomentum };

struct TrainConfig {
  double margin = 0.5;  // must lie in (0,1)
  double learning_rate = 0.05;
  int epochs = 30;
  int batch_size = 32;
  int negatives_per_positive = 1;
  int positives_per_sentence = 4;
  double clip_norm = 5.0;  // <= 0 disables clipping
  OptimizerKind optimizer = OptimizerKind::Sgd;
  double momentum = 0.9;  // SgdMomentum only
  std::uint64_t seed = 1;
  int embedding_dim = 64;
  int hidden_dim = 64;
  int output_dim = 128;
  int threads = 1;  // workers per batch; results are bit-stable per thread count

  void validate() const;
};

// One cross-lingual training pair. label is +1 (same sentiment) or -1.
struct TrainingPair {
  TrigramSequence poor;
  TrigramSequence rich;
  int label = 1;
};

using PairBatch = std::vector<TrainingPair>;

// Pairwise loss on the cosine c of the two embeddings:
//   label +1 -> 1 - c
//   label -1 -> max(0, c - margin)
double contrastive_loss(double cosine, int label, double margin);

struct BatchLoss {
  double total = 0.0;
  std::vector<double> per_pair;  // batch order; total is their in-order sum
};

BatchLoss batch_loss(const PairBatch& batch, const SiameseEncoderParams& params, double margin);

// Exact analytic gradient of one pair's loss w.r.t. every shared
// parameter, added into `grads` (both towers write the same accumulator).
// Returns the pair's loss. A negative pair inside the margin contributes
// zero loss and zero gradient.
double backward_pair(const TrigramSequence& poor, const TrigramSequence& rich, int label,
                     const SiameseEncoderParams& params, double margin, Gradients& grads);
double backward_pair(const TrainingPair& pair, const SiameseEncoderParams& params, double margin,
                     Gradients& grads);

// SGD with optional global-norm clipping; the momentum variant keeps a
// velocity mirror of the parameters. Deterministic.
class Optimizer {
 public:
  explicit Optimizer(const TrainConfig& cfg) : cfg_(cfg) {}

  void step(SiameseEncoderParams& params, const Gradients& grads);

 private:
  TrainConfig cfg_;
  std::optional<Gradients> velocity_;
};

// A pair at the dataset level; sequences are attached at training time.
struct PairSpec {
  std::uint32_t poor_index = 0;
  std::uint32_t rich_index = 0;
  std::int8_t label = 1;
};

// For every poor sentence: positives_per_sentence same-label rich
// sentences (label +1) and negatives_per_positive as many different-label
// ones (label -1), each drawn without replacement within that sentence's
// draws. Deterministic in the seed. With ratio 1 the stream is exactly
// balanced.
std::vector<PairSpec> generate_pairs(const Dataset& poor, const Dataset& rich,
                                     int negatives_per_positive, int positives_per_sentence,
                                     std::uint64_t seed);

// TSV `poor_id<TAB>rich_id<TAB>label`.
void save_pair_cache(const std::vector<PairSpec>& pairs, const Dataset& poor,
                     const Dataset& rich, const std::string& path);

struct EpochRecord {
  int epoch = 0;  // 1-based
  double mean_loss = 0.0;
  std::optional<double> accuracy;
};

// Held-out accuracy probe, run once per epoch on the current parameters.
using EvalHook = std::function<double(const SiameseEncoderParams&)>;

struct TrainResult {
  SiameseEncoderParams params;
  std::vector<EpochRecord> log;
};

// Full training run: pair generation, seeded epoch shuffles, batched
// backward passes, optimizer steps. Both sides index the one shared
// embedding table, so vocab_poor and vocab_rich are normally the same
// vocabulary built over the union of both corpora; distinct vocabularies
// are accepted and alias ids into a table sized for the larger one.
// Aborts with NumericError naming epoch and batch if the loss stops
// being finite.
TrainResult train(const Dataset& poor, const Dataset& rich, const TrainConfig& cfg,
                  const TrigramVocabulary& vocab_poor, const TrigramVocabulary& vocab_rich,
                  const EvalHook& eval_hook = {}, std::ostream* progress = nullptr);

// CSV `epoch,mean_loss,accuracy`, accuracy empty without an eval hook.
std::string epoch_log_to_csv(const std::vector<EpochRecord>& log);
void write_epoch_csv(const std::vector<EpochRecord>& log, const std::string& path);

}  // namespace snasa
