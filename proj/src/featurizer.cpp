#include "snasa/featurizer.hpp"

#include <algorithm>
#include <unordered_set>

#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/strings.hpp"
#include "snasa/utf8.hpp"

namespace snasa {

namespace {

constexpr char32_t kTokenStart = U'^';
constexpr char32_t kTokenEnd = U'$';

// Emits the padded-token trigrams of one token into `out`.
void token_trigrams(std::string_view token, std::vector<std::string>& out) {
  std::vector<char32_t> cps = utf8::decode(token);
  std::vector<char32_t> padded;
  padded.reserve(cps.size() + 2);
  padded.push_back(kTokenStart);
  padded.insert(padded.end(), cps.begin(), cps.end());
  padded.push_back(kTokenEnd);
  for (std::size_t i = 0; i + 2 < padded.size(); ++i) {
    out.push_back(utf8::encode(&padded[i], 3));
  }
}

}  // namespace

const std::string& TrigramVocabulary::trigram_of(std::int32_t id) const {
  if (id <= 0 || static_cast<std::size_t>(id) >= trigrams_.size()) {
    throw UsageError("trigram id " + std::to_string(id) + " out of range");
  }
  return trigrams_[static_cast<std::size_t>(id)];
}

bool operator==(const TrigramVocabulary& a, const TrigramVocabulary& b) {
  return a.trigrams_ == b.trigrams_ && a.opts_.lowercase == b.opts_.lowercase &&
         a.opts_.min_count == b.opts_.min_count && a.opts_.language == b.opts_.language;
}

std::vector<std::string> extract_trigrams(std::string_view text, bool lowercase) {
  std::string lowered;
  if (lowercase) {
    lowered = lowercase_ascii(text);
    text = lowered;
  }
  const auto tokens = split_whitespace(text);
  if (tokens.empty()) {
    throw DataError("cannot extract trigrams from all-whitespace text");
  }
  std::vector<std::string> out;
  for (const auto token : tokens) {
    token_trigrams(token, out);
  }
  return out;
}

TrigramVocabulary build_vocabulary(const Dataset& train, const VocabOptions& opts) {
  if (train.sentences.empty()) {
    throw DataError("cannot build vocabulary from empty dataset '" + train.name + "'");
  }
  if (opts.min_count < 1) {
    throw UsageError("min_count must be >= 1");
  }

  struct Entry {
    std::uint64_t count = 0;
    std::uint64_t first_seen = 0;
  };
  std::unordered_map<std::string, Entry> counts;
  std::uint64_t position = 0;
  for (const auto& s : train.sentences) {
    for (auto& tg : extract_trigrams(s.text, opts.lowercase)) {
      auto [it, inserted] = counts.try_emplace(std::move(tg));
      if (inserted) it->second.first_seen = position;
      ++it->second.count;
      ++position;
    }
  }

  std::vector<std::pair<std::uint64_t, std::string>> kept;
  for (auto& [trigram, entry] : counts) {
    if (entry.count >= opts.min_count) {
      kept.emplace_back(entry.first_seen, trigram);
    }
  }
  std::sort(kept.begin(), kept.end());

  std::vector<std::string> ordered;
  ordered.reserve(kept.size());
  for (auto& [_, trigram] : kept) ordered.push_back(std::move(trigram));
  return vocabulary_from_trigrams(std::move(ordered), opts);
}

TrigramVocabulary vocabulary_from_trigrams(std::vector<std::string> trigrams, VocabOptions opts) {
  TrigramVocabulary v;
  v.opts_ = std::move(opts);
  v.trigrams_.reserve(trigrams.size() + 1);
  v.trigrams_.emplace_back();  // OOV placeholder
  for (auto& tg : trigrams) {
    const auto id = static_cast<std::int32_t>(v.trigrams_.size());
    if (!v.ids_.emplace(tg, id).second) {
      throw DataError("duplicate trigram '" + tg + "' in vocabulary");
    }
    v.trigrams_.push_back(std::move(tg));
  }
  return v;
}

TrigramSequence encode_sentence(std::string_view text, const TrigramVocabulary& vocab,
                                std::string sentence_id) {
  TrigramSequence seq;
  seq.sentence_id = std::move(sentence_id);
  for (const auto& tg : extract_trigrams(text, vocab.options().lowercase)) {
    seq.ids.push_back(vocab.id_of(tg));
  }
  return seq;
}

VocabularyStats vocabulary_stats(const Dataset& d, bool lowercase) {
  if (d.sentences.empty()) {
    throw DataError("vocabulary_stats of empty dataset '" + d.name + "'");
  }
  std::unordered_set<std::string> trigrams;
  std::unordered_set<std::string> words;
  for (const auto& s : d.sentences) {
    std::string text = lowercase ? lowercase_ascii(s.text) : s.text;
    for (const auto token : split_whitespace(text)) {
      words.emplace(token);
    }
    for (auto& tg : extract_trigrams(text, /*lowercase=*/false)) {
      trigrams.insert(std::move(tg));
    }
  }
  return {trigrams.size(), words.size()};
}

std::string vocabulary_to_string(const TrigramVocabulary& vocab) {
  std::string out = "#snasa-vocab v1 lowercase=";
  out += vocab.options().lowercase ? '1' : '0';
  out += " min_count=" + std::to_string(vocab.options().min_count);
  if (!vocab.options().language.empty()) {
    out += " lang=" + vocab.options().language;
  }
  out += '\n';
  for (std::size_t id = 1; id < vocab.size(); ++id) {
    out += vocab.trigram_of(static_cast<std::int32_t>(id));
    out += '\n';
  }
  return out;
}

TrigramVocabulary vocabulary_from_string(std::string_view content) {
  std::vector<std::string_view> lines = split(content, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) {
    throw DataError("vocabulary is empty (missing header)");
  }

  const auto header_fields = split_whitespace(lines[0]);
  if (header_fields.size() < 4 || header_fields[0] != "#snasa-vocab" || header_fields[1] != "v1") {
    throw DataError("bad vocabulary header '" + std::string(lines[0]) + "'");
  }
  VocabOptions opts;
  for (std::size_t i = 2; i < header_fields.size(); ++i) {
    const auto kv = split(header_fields[i], '=');
    if (kv.size() != 2) throw DataError("bad vocabulary header field '" + std::string(header_fields[i]) + "'");
    if (kv[0] == "lowercase") {
      if (kv[1] != "0" && kv[1] != "1") throw DataError("lowercase must be 0 or 1 in vocabulary header");
      opts.lowercase = kv[1] == "1";
    } else if (kv[0] == "min_count") {
      opts.min_count = static_cast<std::uint32_t>(parse_int(kv[1], "vocabulary header"));
    } else if (kv[0] == "lang") {
      opts.language = std::string(kv[1]);
    } else {
      throw DataError("unknown vocabulary header field '" + std::string(kv[0]) + "'");
    }
  }

  std::vector<std::string> trigrams;
  trigrams.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      throw DataError("empty trigram at vocabulary line " + std::to_string(i + 1));
    }
    trigrams.emplace_back(lines[i]);
  }
  return vocabulary_from_trigrams(std::move(trigrams), std::move(opts));
}

void save_vocabulary(const TrigramVocabulary& vocab, const std::string& path) {
  write_file(path, vocabulary_to_string(vocab));
}

TrigramVocabulary load_vocabulary(const std::string& path) {
  return vocabulary_from_string(read_file(path));
}

}  // namespace snasa
