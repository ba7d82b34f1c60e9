#include <doctest.h>

#include <algorithm>
#include <set>

#include "snasa/corpus.hpp"
#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "test_support.hpp"

using namespace snasa;
using namespace snasa::testing;

TEST_SUITE("corpus") {

TEST_CASE("load_dataset parses rows") {
  TempDir tmp("corpus");
  write_file(tmp.path("d.tsv"), "1\tpos\tgreat movie\n2\tneg\tawful\n");
  const Dataset d = load_dataset(tmp.path("d.tsv"), LabelScheme::ThreeClass);
  REQUIRE(d.sentences.size() == 2);
  CHECK(d.sentences[0].id == "1");
  CHECK(d.sentences[0].text == "great movie");
  CHECK(d.sentences[0].label.token() == "pos");
  CHECK(d.sentences[1].label.token() == "neg");
}

TEST_CASE("load_dataset accepts an empty file") {
  TempDir tmp("corpus");
  write_file(tmp.path("empty.tsv"), "");
  CHECK(load_dataset(tmp.path("empty.tsv"), LabelScheme::ThreeClass).sentences.empty());
}

TEST_CASE("load_dataset skips a header line") {
  TempDir tmp("corpus");
  write_file(tmp.path("d.tsv"), "id\tlabel\ttext\n1\tpos\tok then\n");
  CHECK(load_dataset(tmp.path("d.tsv"), LabelScheme::ThreeClass).sentences.size() == 1);
}

TEST_CASE("load_dataset rejects unknown labels with the line number") {
  TempDir tmp("corpus");
  write_file(tmp.path("d.tsv"), "1\tpos\ta\n2\tneg\tb\n3\thappy\tok\n");
  try {
    load_dataset(tmp.path("d.tsv"), LabelScheme::ThreeClass);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("happy") != std::string::npos);
    CHECK(msg.find(":3") != std::string::npos);
  }
}

TEST_CASE("load_dataset rejects four-class tokens under the three-class scheme") {
  TempDir tmp("corpus");
  write_file(tmp.path("d.tsv"), "1\tvpos\ta\n");
  CHECK_THROWS_AS(load_dataset(tmp.path("d.tsv"), LabelScheme::ThreeClass), DataError);
  CHECK_NOTHROW(load_dataset(tmp.path("d.tsv"), LabelScheme::FourClass));
}

TEST_CASE("load_dataset rejects malformed rows, duplicates, empty text") {
  TempDir tmp("corpus");
  write_file(tmp.path("cols.tsv"), "1\tpos\n");
  CHECK_THROWS_AS(load_dataset(tmp.path("cols.tsv"), LabelScheme::ThreeClass), DataError);
  write_file(tmp.path("dup.tsv"), "1\tpos\ta\n1\tneg\tb\n");
  CHECK_THROWS_AS(load_dataset(tmp.path("dup.tsv"), LabelScheme::ThreeClass), DataError);
  write_file(tmp.path("blank.tsv"), "1\tpos\t   \n");
  CHECK_THROWS_AS(load_dataset(tmp.path("blank.tsv"), LabelScheme::ThreeClass), DataError);
}

TEST_CASE("labels parse case-insensitively") {
  TempDir tmp("corpus");
  write_file(tmp.path("d.tsv"), "1\tPOS\ta\n2\tNeu\tb\n");
  const Dataset d = load_dataset(tmp.path("d.tsv"), LabelScheme::ThreeClass);
  CHECK(d.sentences[0].label.token() == "pos");
  CHECK(d.sentences[1].label.token() == "neu");
}

TEST_CASE("save then load is the identity on (id, label, text)") {
  TempDir tmp("corpus");
  const Dataset d = make_dataset({{"first one", 2}, {"второй", 0}, {"तीसरा वाक्य", 1}});
  save_dataset(d, tmp.path("d.tsv"));
  const Dataset back = load_dataset(tmp.path("d.tsv"), LabelScheme::ThreeClass);
  REQUIRE(back.sentences.size() == d.sentences.size());
  for (std::size_t i = 0; i < d.sentences.size(); ++i) {
    CHECK(back.sentences[i].id == d.sentences[i].id);
    CHECK(back.sentences[i].text == d.sentences[i].text);
    CHECK(back.sentences[i].label == d.sentences[i].label);
  }
}

TEST_CASE("class_distribution basics") {
  const Dataset d = make_dataset({{"a", 2}, {"b", 2}, {"c", 0}, {"d", 1}});
  const auto frac = class_distribution(d);
  CHECK(frac[2] == doctest::Approx(0.5));
  CHECK(frac[0] == doctest::Approx(0.25));
  CHECK(frac[1] == doctest::Approx(0.25));

  const Dataset all_pos = make_dataset({{"a", 2}, {"b", 2}});
  const auto frac2 = class_distribution(all_pos);
  CHECK(frac2[2] == 1.0);
  CHECK(frac2[0] == 0.0);
  CHECK(frac2[1] == 0.0);

  CHECK_THROWS_AS(class_distribution(Dataset{}), DataError);
}

TEST_CASE("class_distribution matches a 33/31/36 corpus") {
  std::vector<std::pair<std::string, int>> rows;
  for (int i = 0; i < 33; ++i) rows.push_back({"p" + std::to_string(i), 2});
  for (int i = 0; i < 31; ++i) rows.push_back({"n" + std::to_string(i), 0});
  for (int i = 0; i < 36; ++i) rows.push_back({"u" + std::to_string(i), 1});
  const auto frac = class_distribution(make_dataset(rows));
  CHECK(frac[2] == doctest::Approx(0.33).epsilon(1e-12));
  CHECK(frac[0] == doctest::Approx(0.31).epsilon(1e-12));
  CHECK(frac[1] == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(std::abs(frac[0] + frac[1] + frac[2] - 1.0) <= 1e-12);
}

TEST_CASE("split_dataset stratifies and is deterministic") {
  std::vector<std::pair<std::string, int>> rows;
  for (int i = 0; i < 10; ++i) rows.push_back({"p" + std::to_string(i), 2});
  for (int i = 0; i < 10; ++i) rows.push_back({"n" + std::to_string(i), 0});
  const Dataset d = make_dataset(rows);

  const auto split = split_dataset(d, 0.2, 7);
  CHECK(split.train.sentences.size() == 16);
  CHECK(split.test.sentences.size() == 4);
  std::size_t test_pos = 0, test_neg = 0;
  for (const auto& s : split.test.sentences) {
    (s.label.index() == 2 ? test_pos : test_neg) += 1;
  }
  CHECK(test_pos == 2);
  CHECK(test_neg == 2);

  const auto again = split_dataset(d, 0.2, 7);
  REQUIRE(again.test.sentences.size() == split.test.sentences.size());
  for (std::size_t i = 0; i < split.test.sentences.size(); ++i) {
    CHECK(again.test.sentences[i].id == split.test.sentences[i].id);
  }
}

TEST_CASE("split_dataset is a partition") {
  std::vector<std::pair<std::string, int>> rows;
  for (int i = 0; i < 13; ++i) rows.push_back({"p" + std::to_string(i), 2});
  for (int i = 0; i < 9; ++i) rows.push_back({"n" + std::to_string(i), 0});
  for (int i = 0; i < 6; ++i) rows.push_back({"u" + std::to_string(i), 1});
  const Dataset d = make_dataset(rows);
  const auto split = split_dataset(d, 0.3, 42);

  std::set<std::string> train_ids, test_ids;
  for (const auto& s : split.train.sentences) train_ids.insert(s.id);
  for (const auto& s : split.test.sentences) test_ids.insert(s.id);
  CHECK(train_ids.size() + test_ids.size() == d.sentences.size());
  for (const auto& id : test_ids) CHECK(train_ids.count(id) == 0);

  // class counts of the union equal the input's
  std::vector<int> counts(3, 0);
  for (const auto& s : split.train.sentences) counts[s.label.index()]++;
  for (const auto& s : split.test.sentences) counts[s.label.index()]++;
  CHECK(counts[2] == 13);
  CHECK(counts[0] == 9);
  CHECK(counts[1] == 6);
}

TEST_CASE("split_dataset handles 0.5 on 4+4 and rejects tiny classes") {
  std::vector<std::pair<std::string, int>> rows;
  for (int i = 0; i < 4; ++i) rows.push_back({"p" + std::to_string(i), 2});
  for (int i = 0; i < 4; ++i) rows.push_back({"n" + std::to_string(i), 0});
  const auto split = split_dataset(make_dataset(rows), 0.5, 1);
  CHECK(split.test.sentences.size() == 4);
  CHECK(split.train.sentences.size() == 4);

  const Dataset tiny = make_dataset({{"a", 2}, {"b", 2}, {"c", 0}});
  CHECK_THROWS_AS(split_dataset(tiny, 0.5, 1), DataError);
  CHECK_THROWS_AS(split_dataset(make_dataset(rows), 0.0, 1), UsageError);
}

TEST_CASE("emoji map labels, drops, and counts") {
  EmojiMap map;
  map.entries = {{"❤", label3(2)},          // red heart -> pos
                 {"\U0001F621", label3(0)},      // pouting face -> neg
                 {"\U0001F610", label3(1)}};     // neutral face -> neu
  std::vector<RawSentence> raw = {
      {"t1", "love this ❤"},
      {"t2", "so angry \U0001F621"},
      {"t3", "mixed ❤ \U0001F621"},
      {"t4", "no emoji at all"},
      {"t5", "❤ ❤ doubly nice"},
  };
  const auto result = apply_emoji_map(raw, map);
  REQUIRE(result.dataset.sentences.size() == 3);
  CHECK(result.dataset.sentences[0].label.token() == "pos");
  CHECK(result.dataset.sentences[1].label.token() == "neg");
  CHECK(result.dataset.sentences[2].label.token() == "pos");
  CHECK(result.dropped_conflicting == 1);
  CHECK(result.dropped_unmapped == 1);
  CHECK(result.dropped_empty == 0);
}

TEST_CASE("emoji map keeps emojis by default and can strip them") {
  EmojiMap map;
  map.entries = {{"❤", label3(2)}};
  std::vector<RawSentence> raw = {{"t1", "nice ❤ day"}};
  const auto kept = apply_emoji_map(raw, map, false);
  CHECK(kept.dataset.sentences[0].text == "nice ❤ day");
  const auto stripped = apply_emoji_map(raw, map, true);
  CHECK(stripped.dataset.sentences[0].text == "nice  day");

  std::vector<RawSentence> only = {{"t2", "❤"}};
  const auto gone = apply_emoji_map(only, map, true);
  CHECK(gone.dataset.sentences.empty());
  CHECK(gone.dropped_empty == 1);
}

TEST_CASE("multi-codepoint emojis match longest-first") {
  // heart + variation selector maps differently from the bare heart
  EmojiMap map;
  map.entries = {{"❤", label3(2)}, {"❤️", label3(0)}};
  std::vector<RawSentence> raw = {{"t1", "x ❤️ y"}};
  const auto result = apply_emoji_map(raw, map);
  REQUIRE(result.dataset.sentences.size() == 1);
  CHECK(result.dataset.sentences[0].label.token() == "neg");
}

TEST_CASE("apply_emoji_map rejects an empty map") {
  CHECK_THROWS_AS(apply_emoji_map({{"t", "x"}}, EmojiMap{}), DataError);
}

TEST_CASE("emoji map file loads and rejects duplicates") {
  TempDir tmp("emoji");
  write_file(tmp.path("map.tsv"), "❤\tpos\n\U0001F621\tneg\n");
  const auto map = load_emoji_map(tmp.path("map.tsv"));
  CHECK(map.entries.size() == 2);
  write_file(tmp.path("dup.tsv"), "❤\tpos\n❤\tneg\n");
  CHECK_THROWS_AS(load_emoji_map(tmp.path("dup.tsv")), DataError);
}

}  // TEST_SUITE
