#include "snasa/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/rng.hpp"
#include "snasa/strings.hpp"

namespace snasa {

ReferenceSet build_reference_set(const Model& model, const Dataset& rich, int n_per_class,
                                 std::uint64_t seed) {
  if (n_per_class < 1) throw UsageError("n_per_class must be >= 1");
  const std::size_t k = class_count(rich.scheme);
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < rich.sentences.size(); ++i) {
    by_class[rich.sentences[i].label.index()].push_back(i);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (by_class[c].empty()) {
      throw DataError("class '" + std::string(class_tokens(rich.scheme)[c]) +
                      "' has no sentences to sample references from");
    }
  }

  ReferenceSet refs;
  refs.scheme = rich.scheme;
  refs.n_per_class = n_per_class;
  refs.seed = seed;
  refs.model_checksum = params_checksum(model.params);
  refs.per_class.resize(k);

  Rng rng(seed);
  for (std::size_t c = 0; c < k; ++c) {
    const auto& pool = by_class[c];
    const std::size_t take = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(n_per_class));
    if (take < static_cast<std::size_t>(n_per_class)) {
      warn("class '" + std::string(class_tokens(rich.scheme)[c]) + "' has only " +
           std::to_string(pool.size()) + " sentences; sampling all of them as references");
    }
    for (const std::size_t pick : rng.sample_without_replacement(pool.size(), take)) {
      const auto& s = rich.sentences[pool[pick]];
      const auto emb = encode(encode_sentence(s.text, model.vocab, s.id), model.params);
      refs.per_class[c].push_back({s.id, emb.values});
    }
  }
  return refs;
}

ClassifyPolicy ClassifyPolicy::parse(std::string_view text) {
  ClassifyPolicy p;
  if (text == "meansim") {
    p.kind = Kind::MeanSim;
    return p;
  }
  if (text.starts_with("knn:")) {
    p.kind = Kind::KnnVote;
    p.k = static_cast<int>(parse_int(text.substr(4), "policy knn:<k>"));
    if (p.k < 1) throw UsageError("knn policy needs k >= 1");
    return p;
  }
  if (text.starts_with("threshold:")) {
    p.kind = Kind::ThresholdCount;
    p.threshold = parse_double(text.substr(10), "policy threshold:<t>");
    return p;
  }
  throw UsageError("unknown policy '" + std::string(text) +
                   "' (expected meansim, knn:<k>, or threshold:<t>)");
}

std::string ClassifyPolicy::to_string() const {
  switch (kind) {
    case Kind::MeanSim:
      return "meansim";
    case Kind::KnnVote:
      return "knn:" + std::to_string(k);
    case Kind::ThresholdCount:
      return "threshold:" + format_double(threshold);
  }
  return "meansim";
}

SentimentLabel classify(const SentimentEmbedding& embedding, const ReferenceSet& refs,
                        const ClassifyPolicy& policy) {
  const std::size_t k = refs.per_class.size();
  if (k != class_count(refs.scheme)) {
    throw DataError("reference set does not cover its scheme");
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (refs.per_class[c].empty()) {
      throw DataError("reference class '" + std::string(class_tokens(refs.scheme)[c]) +
                      "' is empty");
    }
  }

  std::vector<double> score(k, 0.0);
  switch (policy.kind) {
    case ClassifyPolicy::Kind::MeanSim: {
      for (std::size_t c = 0; c < k; ++c) {
        double sum = 0.0;
        for (const auto& ref : refs.per_class[c]) {
          sum += cosine_similarity(embedding.values, ref.embedding);
        }
        score[c] = sum / static_cast<double>(refs.per_class[c].size());
      }
      break;
    }
    case ClassifyPolicy::Kind::KnnVote: {
      // (similarity, class, insertion index); ordering on all three keeps
      // the vote deterministic under exact similarity ties.
      struct Scored {
        double sim;
        std::size_t cls;
        std::size_t idx;
      };
      std::vector<Scored> all;
      std::size_t idx = 0;
      for (std::size_t c = 0; c < k; ++c) {
        for (const auto& ref : refs.per_class[c]) {
          all.push_back({cosine_similarity(embedding.values, ref.embedding), c, idx++});
        }
      }
      const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(policy.k), all.size());
      std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                        [](const Scored& a, const Scored& b) {
                          if (a.sim != b.sim) return a.sim > b.sim;
                          if (a.cls != b.cls) return a.cls < b.cls;
                          return a.idx < b.idx;
                        });
      for (std::size_t i = 0; i < take; ++i) score[all[i].cls] += 1.0;
      break;
    }
    case ClassifyPolicy::Kind::ThresholdCount: {
      for (std::size_t c = 0; c < k; ++c) {
        for (const auto& ref : refs.per_class[c]) {
          if (cosine_similarity(embedding.values, ref.embedding) >= policy.threshold) {
            score[c] += 1.0;
          }
        }
      }
      break;
    }
  }

  // Canonical-order argmax: earlier class wins exact ties.
  std::size_t best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (score[c] > score[best]) best = c;
  }
  return SentimentLabel(refs.scheme, static_cast<std::uint8_t>(best));
}

EvalReport report_from_confusion(const std::vector<std::vector<std::size_t>>& confusion,
                                 LabelScheme scheme) {
  const std::size_t k = class_count(scheme);
  if (confusion.size() != k) throw UsageError("confusion matrix has wrong rank");

  EvalReport r;
  r.scheme = scheme;
  r.confusion = confusion;
  r.precision.assign(k, 0.0);
  r.recall.assign(k, 0.0);
  r.f1.assign(k, 0.0);

  std::size_t correct = 0;
  std::vector<std::size_t> row_sum(k, 0), col_sum(k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    if (confusion[t].size() != k) throw UsageError("confusion matrix has wrong rank");
    for (std::size_t p = 0; p < k; ++p) {
      row_sum[t] += confusion[t][p];
      col_sum[p] += confusion[t][p];
      r.total += confusion[t][p];
    }
    correct += confusion[t][t];
  }
  if (r.total == 0) throw DataError("confusion matrix is empty");

  r.accuracy = static_cast<double>(correct) / static_cast<double>(r.total);
  for (std::size_t c = 0; c < k; ++c) {
    const double tp = static_cast<double>(confusion[c][c]);
    r.precision[c] = col_sum[c] == 0 ? 0.0 : tp / static_cast<double>(col_sum[c]);
    r.recall[c] = row_sum[c] == 0 ? 0.0 : tp / static_cast<double>(row_sum[c]);
    const double denom = r.precision[c] + r.recall[c];
    r.f1[c] = denom == 0.0 ? 0.0 : 2.0 * r.precision[c] * r.recall[c] / denom;
    r.macro_precision += r.precision[c];
    r.macro_recall += r.recall[c];
    r.macro_f1 += r.f1[c];
  }
  r.macro_precision /= static_cast<double>(k);
  r.macro_recall /= static_cast<double>(k);
  r.macro_f1 /= static_cast<double>(k);

  // Pooled counts: with one label per sentence, micro P = R = F1 = accuracy.
  std::size_t tp = 0, predicted = 0, actual = 0;
  for (std::size_t c = 0; c < k; ++c) {
    tp += confusion[c][c];
    predicted += col_sum[c];
    actual += row_sum[c];
  }
  r.micro_precision = predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
  r.micro_recall = actual == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(actual);
  const double micro_denom = r.micro_precision + r.micro_recall;
  r.micro_f1 = micro_denom == 0.0
                   ? 0.0
                   : 2.0 * r.micro_precision * r.micro_recall / micro_denom;
  return r;
}

EvalReport evaluate(const Model& model, const ReferenceSet& refs, const Dataset& test,
                    const ClassifyPolicy& policy) {
  if (test.sentences.empty()) throw DataError("evaluate: test dataset is empty");
  if (test.scheme != refs.scheme) {
    throw DataError("evaluate: test dataset and reference set use different schemes");
  }
  const std::size_t k = class_count(test.scheme);
  std::vector<std::vector<std::size_t>> confusion(k, std::vector<std::size_t>(k, 0));
  for (const auto& s : test.sentences) {
    const auto emb = encode(encode_sentence(s.text, model.vocab, s.id), model.params);
    const auto predicted = classify(emb, refs, policy);
    confusion[s.label.index()][predicted.index()] += 1;
  }
  EvalReport report = report_from_confusion(confusion, test.scheme);
  report.policy = policy;
  report.model_checksum = params_checksum(model.params);
  report.refs_seed = refs.seed;
  return report;
}

namespace {
std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}
}  // namespace

std::string eval_report_to_csv(const EvalReport& report) {
  const auto tokens = class_tokens(report.scheme);
  std::string out;
  out += "# model=" + hex64(report.model_checksum) + " policy=" +
         (report.method.empty() ? report.policy.to_string() : report.method) +
         " seed=" + std::to_string(report.refs_seed) + "\n";
  out += "# scheme=" + std::string(scheme_name(report.scheme)) +
         " total=" + std::to_string(report.total) + " averaging=macro\n";
  out += "class,precision,recall,f1\n";
  for (std::size_t c = 0; c < tokens.size(); ++c) {
    out += std::string(tokens[c]) + "," + format_double(report.precision[c]) + "," +
           format_double(report.recall[c]) + "," + format_double(report.f1[c]) + "\n";
  }
  out += "accuracy," + format_double(report.accuracy) + "\n";
  out += "macro," + format_double(report.macro_precision) + "," +
         format_double(report.macro_recall) + "," + format_double(report.macro_f1) + "\n";
  if (report.include_micro) {
    out += "micro," + format_double(report.micro_precision) + "," +
           format_double(report.micro_recall) + "," + format_double(report.micro_f1) + "\n";
  }
  return out;
}

void write_eval_csv(const EvalReport& report, const std::string& path) {
  write_file(path, eval_report_to_csv(report));
}

void save_reference_set(const ReferenceSet& refs, const std::string& path) {
  std::string out = "#snasa-refs v1 scheme=" + std::string(scheme_name(refs.scheme)) +
                    " n_per_class=" + std::to_string(refs.n_per_class) +
                    " seed=" + std::to_string(refs.seed) +
                    " model_checksum=" + hex64(refs.model_checksum) + "\n";
  const auto tokens = class_tokens(refs.scheme);
  for (std::size_t c = 0; c < refs.per_class.size(); ++c) {
    for (const auto& ref : refs.per_class[c]) {
      out += std::string(tokens[c]) + "\t" + ref.sentence_id + "\t";
      for (Eigen::Index i = 0; i < ref.embedding.size(); ++i) {
        if (i > 0) out += ' ';
        out += format_double(ref.embedding(i));
      }
      out += '\n';
    }
  }
  write_file(path, out);
}

ReferenceSet load_reference_set(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw DataError("reference file '" + path + "' is empty");

  const auto header = split_whitespace(lines[0]);
  if (header.size() < 2 || header[0] != "#snasa-refs" || header[1] != "v1") {
    throw DataError("bad reference file header in '" + path + "'");
  }
  ReferenceSet refs;
  for (std::size_t i = 2; i < header.size(); ++i) {
    const auto kv = split(header[i], '=');
    if (kv.size() != 2) throw DataError("bad reference header field in '" + path + "'");
    if (kv[0] == "scheme") {
      const auto scheme = parse_scheme(kv[1]);
      if (!scheme) throw DataError("bad scheme in reference header");
      refs.scheme = *scheme;
    } else if (kv[0] == "n_per_class") {
      refs.n_per_class = static_cast<int>(parse_int(kv[1], "reference header"));
    } else if (kv[0] == "seed") {
      refs.seed = static_cast<std::uint64_t>(parse_int(kv[1], "reference header"));
    } else if (kv[0] == "model_checksum") {
      refs.model_checksum = std::stoull(std::string(kv[1]), nullptr, 16);
    } else {
      throw DataError("unknown reference header field '" + std::string(kv[0]) + "'");
    }
  }

  refs.per_class.resize(class_count(refs.scheme));
  Eigen::Index dim = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = split(lines[i], '\t');
    if (cols.size() != 3) {
      throw DataError("malformed reference row at " + path + ":" + std::to_string(i + 1));
    }
    const auto label = parse_label(cols[0], refs.scheme);
    if (!label) {
      throw DataError("unknown class '" + std::string(cols[0]) + "' at " + path + ":" +
                      std::to_string(i + 1));
    }
    const auto values = split_whitespace(cols[2]);
    if (values.empty()) {
      throw DataError("empty embedding at " + path + ":" + std::to_string(i + 1));
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t j = 0; j < values.size(); ++j) {
      v(static_cast<Eigen::Index>(j)) = parse_double(values[j], "reference embedding");
    }
    if (dim < 0) {
      dim = v.size();
    } else if (v.size() != dim) {
      throw DataError("inconsistent embedding dimension at " + path + ":" + std::to_string(i + 1));
    }
    refs.per_class[label->index()].push_back({std::string(cols[1]), std::move(v)});
  }
  for (std::size_t c = 0; c < refs.per_class.size(); ++c) {
    if (refs.per_class[c].empty()) {
      throw DataError("reference class '" + std::string(class_tokens(refs.scheme)[c]) +
                      "' is empty in '" + path + "'");
    }
  }
  return refs;
}

}  // namespace snasa
