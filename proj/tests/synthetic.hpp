#pragma once

#include <string>
#include <vector>

#include "snasa/corpus.hpp"
#include "snasa/rng.hpp"

namespace snasa::testing {

// Two toy "languages" with disjoint token inventories. Sentiment is
// marked lexically: language A uses gud/yay vs bad/ugh, language B uses
// bon/joli vs mal/fei; neutral sentences carry no marker. Linearly
// separable by construction, which the baseline checks lean on.
struct BilingualTask {
  Dataset poor_train;  // language A
  Dataset poor_test;   // language A, held out
  Dataset rich_train;  // language B
};

namespace detail {

inline const std::vector<std::string>& fillers_a() {
  static const std::vector<std::string> v = {"da", "lo", "mi", "ta", "re", "su", "ne", "ki"};
  return v;
}
inline const std::vector<std::string>& fillers_b() {
  static const std::vector<std::string> v = {"vu", "pe", "za", "ho", "fi", "ru", "we", "ja"};
  return v;
}
inline const std::vector<std::string>& markers(bool lang_a, int cls) {
  static const std::vector<std::string> a_neg = {"bad", "ugh"};
  static const std::vector<std::string> a_pos = {"gud", "yay"};
  static const std::vector<std::string> b_neg = {"mal", "fei"};
  static const std::vector<std::string> b_pos = {"bon", "joli"};
  return lang_a ? (cls == 0 ? a_neg : a_pos) : (cls == 0 ? b_neg : b_pos);
}

// cls: 0 = neg, 1 = neu, 2 = pos (canonical three-class order).
inline std::string make_sentence(Rng& rng, bool lang_a, int cls) {
  const auto& fillers = lang_a ? fillers_a() : fillers_b();
  std::vector<std::string> tokens;
  const std::size_t n_fillers = 3 + rng.below(3);
  for (std::size_t i = 0; i < n_fillers; ++i) {
    tokens.push_back(fillers[rng.below(fillers.size())]);
  }
  if (cls != 1) {
    const auto& pool = markers(lang_a, cls == 0 ? 0 : 1);
    const std::size_t n_markers = 1 + rng.below(2);
    for (std::size_t i = 0; i < n_markers; ++i) {
      const std::size_t at = rng.below(tokens.size() + 1);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), pool[rng.below(pool.size())]);
    }
  }
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text += ' ';
    text += tokens[i];
  }
  return text;
}

inline Dataset make_corpus(Rng& rng, bool lang_a, const std::string& name, int per_class) {
  Dataset d;
  d.name = name;
  d.scheme = LabelScheme::ThreeClass;
  int serial = 0;
  for (int cls = 0; cls < 3; ++cls) {
    for (int i = 0; i < per_class; ++i) {
      d.sentences.push_back({name + "-" + std::to_string(serial++),
                             make_sentence(rng, lang_a, cls),
                             SentimentLabel(LabelScheme::ThreeClass, static_cast<std::uint8_t>(cls))});
    }
  }
  return d;
}

}  // namespace detail

inline BilingualTask make_bilingual_task(std::uint64_t seed, int train_per_class = 300,
                                         int test_per_class = 50) {
  Rng rng(seed);
  BilingualTask task;
  task.poor_train = detail::make_corpus(rng, true, "a-train", train_per_class);
  task.poor_test = detail::make_corpus(rng, true, "a-test", test_per_class);
  task.rich_train = detail::make_corpus(rng, false, "b-train", train_per_class);
  return task;
}

// One-hot word vectors over language A's inventory, in the word-vector
// file format.
inline std::string one_hot_vectors_language_a() {
  std::vector<std::string> words = detail::fillers_a();
  for (int cls : {0, 1}) {
    for (const auto& m : detail::markers(true, cls)) words.push_back(m);
  }
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out += words[i];
    for (std::size_t j = 0; j < words.size(); ++j) {
      out += j == i ? " 1" : " 0";
    }
    out += '\n';
  }
  return out;
}

}  // namespace snasa::testing
