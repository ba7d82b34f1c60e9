#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snasa/labels.hpp"

namespace snasa {

struct LabeledSentence {
  std::string id;
  std::string text;  // trimmed; at least one non-whitespace codepoint
  SentimentLabel label;
};

// Sentences keep file order; seeded sampling depends on it being stable.
struct Dataset {
  std::string name;
  LabelScheme scheme = LabelScheme::ThreeClass;
  std::vector<LabeledSentence> sentences;
};

// TSV `id<TAB>label<TAB>text`, one record per line, UTF-8, LF endings.
// An optional header line is detected by a literal first cell "id".
// Labels parse case-insensitively from {neg, neu, pos, vneg, vpos}.
Dataset load_dataset(const std::string& path, LabelScheme scheme);
void save_dataset(const Dataset& d, const std::string& path);

// Fraction of sentences per class, indexed by canonical class index.
// Every class of the scheme is present (possibly 0). Errors on empty input.
std::vector<double> class_distribution(const Dataset& d);

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Stratified, deterministic split. Per class the test half receives
// round(test_fraction * class_size) sentences, clamped to [1, size-1].
// Requires at least 2 sentences in every class.
SplitResult split_dataset(const Dataset& d, double test_fraction, std::uint64_t seed);

// Emoji codepoint-sequence -> three-class label. Multi-codepoint emojis
// (variation selectors, ZWJ sequences) are matched longest-first.
struct EmojiMap {
  std::vector<std::pair<std::string, SentimentLabel>> entries;
};

// TSV `emoji<TAB>label`.
EmojiMap load_emoji_map(const std::string& path);

struct RawSentence {
  std::string id;
  std::string text;
};

// TSV `id<TAB>text`.
std::vector<RawSentence> load_raw_sentences(const std::string& path);

struct EmojiApplyResult {
  Dataset dataset;
  std::size_t dropped_unmapped = 0;     // no mapped emoji in the text
  std::size_t dropped_conflicting = 0;  // mapped emojis disagree on the class
  std::size_t dropped_empty = 0;        // stripping left no text (strip_emojis only)
};

// Labels each sentence whose mapped emojis all agree on one class; drops
// the rest and counts the drops per reason. Emojis stay in the text unless
// strip_emojis is set.
EmojiApplyResult apply_emoji_map(const std::vector<RawSentence>& raw, const EmojiMap& map,
                                 bool strip_emojis = false);

}  // namespace snasa
