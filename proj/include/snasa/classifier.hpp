#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snasa/corpus.hpp"
#include "snasa/encoder.hpp"
#include "snasa/model_io.hpp"

namespace snasa {

inline constexpr int kDefaultReferencesPerClass = 100;

struct Reference {
  std::string sentence_id;
  Eigen::VectorXd embedding;
};

// Per-class anchors sampled from the rich-language corpus and embedded
// once; classification scores test sentences against these.
struct ReferenceSet {
  LabelScheme scheme = LabelScheme::ThreeClass;
  std::vector<std::vector<Reference>> per_class;  // canonical class order
  int n_per_class = kDefaultReferencesPerClass;
  std::uint64_t seed = 0;
  std::uint64_t model_checksum = 0;
};

// Samples min(n_per_class, class size) sentences per class without
// replacement (deterministic in the seed; a warning is emitted for
// undersized classes) and embeds them with the model.
ReferenceSet build_reference_set(const Model& model, const Dataset& rich,
                                 int n_per_class = kDefaultReferencesPerClass,
                                 std::uint64_t seed = 0);

// MeanSim: argmax over classes of the mean cosine to the class references.
// KnnVote: the k globally most-similar references vote by majority.
// ThresholdCount: per class, count references with cosine >= threshold.
// All ties break by canonical label order.
struct ClassifyPolicy {
  enum class Kind { MeanSim, KnnVote, ThresholdCount };
  Kind kind = Kind::MeanSim;
  int k = 3;               // KnnVote
  double threshold = 0.5;  // ThresholdCount

  // "meansim" | "knn:<k>" | "threshold:<t>"
  static ClassifyPolicy parse(std::string_view text);
  std::string to_string() const;
};

SentimentLabel classify(const SentimentEmbedding& embedding, const ReferenceSet& refs,
                        const ClassifyPolicy& policy);

struct EvalReport {
  LabelScheme scheme = LabelScheme::ThreeClass;
  double accuracy = 0.0;
  std::vector<double> precision;  // per class, canonical order; 0/0 = 0
  std::vector<double> recall;
  std::vector<double> f1;
  double macro_precision = 0.0;  // unweighted means over classes
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double micro_precision = 0.0;  // pooled over all decisions
  double micro_recall = 0.0;
  double micro_f1 = 0.0;
  bool include_micro = false;  // adds a micro row to the CSV
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::size_t total = 0;
  ClassifyPolicy policy;
  std::string method;  // overrides the policy tag in the CSV when nonempty
  std::uint64_t model_checksum = 0;
  std::uint64_t refs_seed = 0;
};

// Recomputes accuracy and the per-class metrics from a confusion matrix.
EvalReport report_from_confusion(const std::vector<std::vector<std::size_t>>& confusion,
                                 LabelScheme scheme);

// Classifies every test sentence and assembles the metric report.
EvalReport evaluate(const Model& model, const ReferenceSet& refs, const Dataset& test,
                    const ClassifyPolicy& policy);

// CSV block: `# key=value` metadata lines, then class,precision,recall,f1
// rows, then accuracy and macro rows. Byte-deterministic.
std::string eval_report_to_csv(const EvalReport& report);
void write_eval_csv(const EvalReport& report, const std::string& path);

// Text format: header `#snasa-refs v1 scheme=<3|4> n_per_class=<n>
// seed=<s> model_checksum=<hex>`, then `class<TAB>id<TAB>v1 v2 ...` rows.
// Load verifies embedding dimensions agree.
void save_reference_set(const ReferenceSet& refs, const std::string& path);
ReferenceSet load_reference_set(const std::string& path);

}  // namespace snasa
