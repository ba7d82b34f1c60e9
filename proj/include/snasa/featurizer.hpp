#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "snasa/corpus.hpp"

namespace snasa {

struct VocabOptions {
  bool lowercase = true;       // ASCII A-Z only; caseless scripts pass through
  std::uint32_t min_count = 1;
  std::string language;        // advisory tag, persisted when nonempty
};

// Frozen bijection trigram <-> id. Id 0 is reserved for OOV; real trigrams
// get dense ids 1..size-1 in first-occurrence order over the build corpus.
class TrigramVocabulary {
 public:
  static constexpr std::int32_t kOovId = 0;

  std::int32_t id_of(std::string_view trigram) const {
    const auto it = ids_.find(std::string(trigram));
    return it == ids_.end() ? kOovId : it->second;
  }

  // Valid for ids in [1, size).
  const std::string& trigram_of(std::int32_t id) const;

  // Number of ids including the OOV slot.
  std::size_t size() const { return trigrams_.size(); }

  const VocabOptions& options() const { return opts_; }

  friend bool operator==(const TrigramVocabulary& a, const TrigramVocabulary& b);

 private:
  friend TrigramVocabulary build_vocabulary(const Dataset&, const VocabOptions&);
  friend TrigramVocabulary load_vocabulary(const std::string&);
  friend TrigramVocabulary vocabulary_from_trigrams(std::vector<std::string>, VocabOptions);

  std::unordered_map<std::string, std::int32_t> ids_;
  std::vector<std::string> trigrams_;  // [0] is an empty placeholder for OOV
  VocabOptions opts_;
};

// Splits on whitespace; each token of codepoints c1..cn is padded to
// ^c1..cn$ and yields its n consecutive codepoint triples in order.
// Tokens never share trigrams. Errors on all-whitespace text.
std::vector<std::string> extract_trigrams(std::string_view text, bool lowercase);

TrigramVocabulary build_vocabulary(const Dataset& train, const VocabOptions& opts);

// Builds directly from an explicit trigram list (ids assigned in list
// order starting at 1). List entries must be unique.
TrigramVocabulary vocabulary_from_trigrams(std::vector<std::string> trigrams, VocabOptions opts);

struct TrigramSequence {
  std::vector<std::int32_t> ids;
  std::string sentence_id;
};

TrigramSequence encode_sentence(std::string_view text, const TrigramVocabulary& vocab,
                                std::string sentence_id = {});

struct VocabularyStats {
  std::size_t unique_trigrams = 0;
  std::size_t unique_words = 0;
};

VocabularyStats vocabulary_stats(const Dataset& d, bool lowercase);

// Text format: header line `#snasa-vocab v1 lowercase=<0|1> min_count=<n>`
// (plus ` lang=<tag>` when a language tag is set), then one trigram per
// line, line k+1 holding the trigram with id k. Round-trips exactly.
void save_vocabulary(const TrigramVocabulary& vocab, const std::string& path);
TrigramVocabulary load_vocabulary(const std::string& path);

// Same formats against in-memory strings; the model file embeds these.
std::string vocabulary_to_string(const TrigramVocabulary& vocab);
TrigramVocabulary vocabulary_from_string(std::string_view content);

}  // namespace snasa
