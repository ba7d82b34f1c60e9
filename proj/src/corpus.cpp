#include "snasa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/rng.hpp"
#include "snasa/strings.hpp"
#include "snasa/utf8.hpp"

namespace snasa {

namespace {

bool has_visible_codepoint(std::string_view text) {
  return !trim(text).empty();
}

std::string line_ref(const std::string& path, std::size_t lineno) {
  return path + ":" + std::to_string(lineno);
}

}  // namespace

Dataset load_dataset(const std::string& path, LabelScheme scheme) {
  const auto lines = read_lines(path);
  Dataset d;
  d.name = path;
  d.scheme = scheme;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string& line = lines[i];
    if (line.empty() && i + 1 == lines.size()) break;  // trailing newline
    const auto cols = split(line, '\t');
    if (i == 0 && !cols.empty() && cols[0] == "id") continue;  // header
    if (cols.size() != 3) {
      throw DataError("malformed row (expected 3 tab-separated columns, got " +
                      std::to_string(cols.size()) + ") at " + line_ref(path, lineno));
    }
    const auto label = parse_label(cols[1], scheme);
    if (!label) {
      throw DataError("unknown label '" + std::string(cols[1]) + "' at " +
                      line_ref(path, lineno));
    }
    std::string id(cols[0]);
    if (id.empty()) {
      throw DataError("empty id at " + line_ref(path, lineno));
    }
    if (!seen_ids.insert(id).second) {
      throw DataError("duplicate id '" + id + "' at " + line_ref(path, lineno));
    }
    std::string text(trim(cols[2]));
    if (!has_visible_codepoint(text)) {
      throw DataError("empty text at " + line_ref(path, lineno));
    }
    utf8::decode(text);  // reject malformed UTF-8 early
    d.sentences.push_back({std::move(id), std::move(text), *label});
  }
  return d;
}

void save_dataset(const Dataset& d, const std::string& path) {
  std::string out;
  for (const auto& s : d.sentences) {
    out += s.id;
    out += '\t';
    out += s.label.token();
    out += '\t';
    out += s.text;
    out += '\n';
  }
  write_file(path, out);
}

std::vector<double> class_distribution(const Dataset& d) {
  if (d.sentences.empty()) {
    throw DataError("class_distribution of empty dataset '" + d.name + "'");
  }
  std::vector<double> fractions(class_count(d.scheme), 0.0);
  for (const auto& s : d.sentences) {
    fractions[s.label.index()] += 1.0;
  }
  const double total = static_cast<double>(d.sentences.size());
  for (double& f : fractions) f /= total;
  return fractions;
}

SplitResult split_dataset(const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw UsageError("test_fraction must lie in (0,1)");
  }
  const std::size_t k = class_count(d.scheme);
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < d.sentences.size(); ++i) {
    by_class[d.sentences[i].label.index()].push_back(i);
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (by_class[c].size() == 1) {
      throw DataError("class '" + std::string(class_tokens(d.scheme)[c]) +
                      "' has fewer than 2 sentences; cannot split");
    }
  }

  Rng rng(seed);
  std::vector<bool> in_test(d.sentences.size(), false);
  for (std::size_t c = 0; c < k; ++c) {
    auto& idx = by_class[c];
    if (idx.empty()) continue;  // scheme classes absent from the data
    rng.shuffle(idx);
    const auto size = idx.size();
    auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(size)));
    n_test = std::clamp<std::size_t>(n_test, 1, size - 1);
    for (std::size_t i = 0; i < n_test; ++i) in_test[idx[i]] = true;
  }

  SplitResult r;
  r.train.name = d.name + "#train";
  r.test.name = d.name + "#test";
  r.train.scheme = r.test.scheme = d.scheme;
  for (std::size_t i = 0; i < d.sentences.size(); ++i) {
    (in_test[i] ? r.test : r.train).sentences.push_back(d.sentences[i]);
  }
  return r;
}

EmojiMap load_emoji_map(const std::string& path) {
  const auto lines = read_lines(path);
  EmojiMap map;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) {
      throw DataError("malformed emoji map row at " + line_ref(path, i + 1));
    }
    std::string emoji(cols[0]);
    if (emoji.empty() || utf8::decode(emoji).empty()) {
      throw DataError("empty emoji at " + line_ref(path, i + 1));
    }
    const auto label = parse_label(cols[1], LabelScheme::ThreeClass);
    if (!label) {
      throw DataError("unknown label '" + std::string(cols[1]) + "' at " +
                      line_ref(path, i + 1));
    }
    if (!seen.insert(emoji).second) {
      throw DataError("emoji mapped twice at " + line_ref(path, i + 1));
    }
    map.entries.emplace_back(std::move(emoji), *label);
  }
  return map;
}

std::vector<RawSentence> load_raw_sentences(const std::string& path) {
  const auto lines = read_lines(path);
  std::vector<RawSentence> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() && i + 1 == lines.size()) break;
    const auto cols = split(line, '\t');
    if (i == 0 && !cols.empty() && cols[0] == "id") continue;
    if (cols.size() != 2) {
      throw DataError("malformed row (expected 2 tab-separated columns) at " +
                      line_ref(path, i + 1));
    }
    out.push_back({std::string(cols[0]), std::string(cols[1])});
  }
  return out;
}

EmojiApplyResult apply_emoji_map(const std::vector<RawSentence>& raw, const EmojiMap& map,
                                 bool strip_emojis) {
  if (map.entries.empty()) throw DataError("emoji map is empty");

  // Longest-first so multi-codepoint sequences win over their prefixes.
  std::vector<const std::pair<std::string, SentimentLabel>*> ordered;
  ordered.reserve(map.entries.size());
  for (const auto& e : map.entries) ordered.push_back(&e);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->first.size() > b->first.size(); });

  EmojiApplyResult result;
  result.dataset.name = "emoji-labeled";
  result.dataset.scheme = LabelScheme::ThreeClass;
  std::unordered_set<std::string> seen_ids;

  for (const auto& sentence : raw) {
    const std::string& text = sentence.text;
    utf8::decode(text);
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // byte ranges of matches
    std::optional<SentimentLabel> agreed;
    bool conflict = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::pair<std::string, SentimentLabel>* hit = nullptr;
      for (const auto* entry : ordered) {
        if (text.compare(pos, entry->first.size(), entry->first) == 0) {
          hit = entry;
          break;
        }
      }
      if (hit) {
        spans.emplace_back(pos, hit->first.size());
        if (!agreed) {
          agreed = hit->second;
        } else if (*agreed != hit->second) {
          conflict = true;
        }
        pos += hit->first.size();
      } else {
        // skip one codepoint
        ++pos;
        while (pos < text.size() && (static_cast<unsigned char>(text[pos]) & 0xC0) == 0x80) ++pos;
      }
    }

    if (!agreed) {
      ++result.dropped_unmapped;
      continue;
    }
    if (conflict) {
      ++result.dropped_conflicting;
      continue;
    }

    std::string labeled_text;
    if (strip_emojis) {
      std::size_t cursor = 0;
      for (const auto& [start, len] : spans) {
        labeled_text.append(text, cursor, start - cursor);
        cursor = start + len;
      }
      labeled_text.append(text, cursor, text.size() - cursor);
      labeled_text = std::string(trim(labeled_text));
      if (labeled_text.empty()) {
        ++result.dropped_empty;
        continue;
      }
    } else {
      labeled_text = std::string(trim(text));
    }

    if (!seen_ids.insert(sentence.id).second) {
      throw DataError("duplicate id '" + sentence.id + "' in raw sentences");
    }
    result.dataset.sentences.push_back({sentence.id, std::move(labeled_text), *agreed});
  }
  return result;
}

}  // namespace snasa
