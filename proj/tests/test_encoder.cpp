#include <doctest.h>

#include <cmath>

#include "snasa/encoder.hpp"
#include "snasa/error.hpp"
#include "snasa/fileio.hpp"
#include "snasa/model_io.hpp"
#include "snasa/rng.hpp"
#include "gradient_check.hpp"
#include "test_support.hpp"

using namespace snasa;
using namespace snasa::testing;

namespace {

template <typename M>
bool bits_equal(const M& x, const M& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() && (x.array() == y.array()).all();
}

bool params_equal(const SiameseEncoderParams& a, const SiameseEncoderParams& b) {
  return bits_equal(a.embeddings, b.embeddings) && bits_equal(a.fw.w_input, b.fw.w_input) &&
         bits_equal(a.fw.w_recurrent, b.fw.w_recurrent) && bits_equal(a.fw.bias, b.fw.bias) &&
         bits_equal(a.bw.w_input, b.bw.w_input) &&
         bits_equal(a.bw.w_recurrent, b.bw.w_recurrent) && bits_equal(a.bw.bias, b.bw.bias) &&
         bits_equal(a.dense_w, b.dense_w) && bits_equal(a.dense_b, b.dense_b);
}

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("init is deterministic and shaped by the dims") {
  const EncoderDims dims{10, 4, 6, 8};
  const auto a = init_params(dims, 123);
  const auto b = init_params(dims, 123);
  CHECK(params_equal(a, b));
  const auto c = init_params(dims, 124);
  CHECK_FALSE(params_equal(a, c));

  CHECK(a.embeddings.rows() == 10);
  CHECK(a.embeddings.cols() == 4);
  CHECK(a.dense_w.rows() == 8);
  CHECK(a.dense_w.cols() == 12);  // d x 2h
  CHECK(a.fw.w_input.rows() == 24);
  CHECK(a.fw.w_input.cols() == 4);
  CHECK(a.fw.w_recurrent.cols() == 6);
}

TEST_CASE("forget-gate bias starts at one, everything else at zero") {
  const auto p = init_params({10, 4, 6, 8}, 1);
  const int h = 6;
  for (const auto* cell : {&p.fw, &p.bw}) {
    CHECK(cell->bias.segment(0, h).isZero());
    CHECK((cell->bias.segment(h, h).array() == 1.0).all());
    CHECK(cell->bias.segment(2 * h, 2 * h).isZero());
  }
  CHECK(p.dense_b.isZero());
}

TEST_CASE("init rejects zero dimensions") {
  CHECK_THROWS_AS(init_params({0, 4, 6, 8}, 1), UsageError);
  CHECK_THROWS_AS(init_params({10, 0, 6, 8}, 1), UsageError);
}

TEST_CASE("embeddings are non-negative and deterministic") {
  const auto p = init_params({20, 8, 5, 7}, 77);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto seq = random_sequence(rng, 20, 1, 12);
    const auto e1 = encode(seq, p);
    const auto e2 = encode(seq, p);
    CHECK((e1.values.array() >= 0.0).all());
    CHECK(bits_equal(e1.values, e2.values));
  }
}

TEST_CASE("zero dense weights pin the output to max(0, bias)") {
  auto p = init_params({20, 8, 5, 7}, 7);
  p.dense_w.setZero();
  p.dense_b << 1.0, -2.0, 0.5, 0.0, -0.1, 3.0, -4.0;
  Rng rng(4);
  const auto a = encode(random_sequence(rng, 20, 2, 6), p);
  const auto b = encode(random_sequence(rng, 20, 2, 6), p);
  Eigen::VectorXd expected(7);
  expected << 1.0, 0.0, 0.5, 0.0, 0.0, 3.0, 0.0;
  CHECK(bits_equal(a.values, expected));
  CHECK(bits_equal(b.values, expected));
}

TEST_CASE("the recurrent encoder is order sensitive") {
  const auto p = init_params({30, 8, 10, 12}, 2024);
  TrigramSequence seq;
  seq.ids = {3, 7, 1, 12, 25, 9};
  TrigramSequence rev = seq;
  std::reverse(rev.ids.begin(), rev.ids.end());
  const auto a = encode(seq, p);
  const auto b = encode(rev, p);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() > 1e-9);
}

TEST_CASE("encode rejects empty and out-of-range sequences") {
  const auto p = init_params({10, 4, 6, 8}, 1);
  CHECK_THROWS_AS(encode(TrigramSequence{}, p), DataError);
  TrigramSequence bad;
  bad.ids = {3, 10};
  CHECK_THROWS_AS(encode(bad, p), DataError);
}

TEST_CASE("cosine similarity basics") {
  SentimentEmbedding v{Eigen::VectorXd(2), ""};
  v.values << 3.0, 4.0;
  CHECK(cosine_similarity(v, v) == doctest::Approx(1.0));

  SentimentEmbedding x{Eigen::VectorXd(2), ""}, y{Eigen::VectorXd(2), ""};
  x.values << 1.0, 0.0;
  y.values << 0.0, 1.0;
  CHECK(cosine_similarity(x, y) == doctest::Approx(0.0));

  SentimentEmbedding z{Eigen::VectorXd(2), ""};
  z.values << 1.0, 1.0;
  CHECK(cosine_similarity(x, z) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("zero-norm cosine is 0 with a warning") {
  std::vector<std::string> warnings;
  set_warning_sink([&](const std::string& msg) { warnings.push_back(msg); });
  SentimentEmbedding zero{Eigen::VectorXd::Zero(3), ""};
  SentimentEmbedding v{Eigen::VectorXd(3), ""};
  v.values << 1.0, 2.0, 3.0;
  CHECK(cosine_similarity(zero, v) == 0.0);
  CHECK(warnings.size() == 1);
  set_warning_sink(nullptr);
}

TEST_CASE("euclidean energy") {
  SentimentEmbedding a{Eigen::VectorXd(2), ""}, b{Eigen::VectorXd(2), ""};
  a.values << 0.0, 0.0;
  b.values << 3.0, 4.0;
  CHECK(euclidean_energy(a, a) == 0.0);
  CHECK(euclidean_energy(a, b) == doctest::Approx(5.0));

  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd p(4), q(4);
    for (int j = 0; j < 4; ++j) {
      p(j) = rng.uniform(-2, 2);
      q(j) = rng.uniform(-2, 2);
    }
    SentimentEmbedding ep{p, ""}, eq{q, ""};
    CHECK(euclidean_energy(ep, eq) == euclidean_energy(eq, ep));
  }

  SentimentEmbedding short_vec{Eigen::VectorXd::Zero(3), ""};
  CHECK_THROWS_AS(euclidean_energy(a, short_vec), UsageError);
}

TEST_CASE("cosine and energy are symmetric to the bit") {
  const auto p = init_params({25, 6, 8, 10}, 5);
  Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = encode(random_sequence(rng, 25, 1, 9), p);
    const auto b = encode(random_sequence(rng, 25, 1, 9), p);
    CHECK(cosine_similarity(a, b) == cosine_similarity(b, a));
    CHECK(euclidean_energy(a, b) == euclidean_energy(b, a));
  }
}

TEST_CASE("model save/load round-trips bit-exactly") {
  TempDir tmp("model");
  const Dataset d = make_dataset({{"words for the vocabulary", 2}, {"and a few more", 0}});
  const auto vocab = build_vocabulary(d, VocabOptions{});
  const auto params = init_params({vocab.size(), 6, 8, 10}, 99);

  save_model(params, vocab, tmp.path("m.bin"));
  const Model back = load_model(tmp.path("m.bin"));
  CHECK(params_equal(params, back.params));
  CHECK(back.vocab == vocab);
  CHECK(params_checksum(back.params) == params_checksum(params));

  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto seq = random_sequence(rng, vocab.size(), 1, 10);
    CHECK(bits_equal(encode(seq, params).values, encode(seq, back.params).values));
  }

  save_model(params, vocab, tmp.path("m2.bin"));
  CHECK(read_file(tmp.path("m.bin")) == read_file(tmp.path("m2.bin")));
}

TEST_CASE("model load rejects bad magic and truncation") {
  TempDir tmp("model");
  const Dataset d = make_dataset({{"abc", 2}});
  const auto vocab = build_vocabulary(d, VocabOptions{});
  const auto params = init_params({vocab.size(), 4, 4, 4}, 1);
  save_model(params, vocab, tmp.path("m.bin"));

  auto bytes = read_file(tmp.path("m.bin"));
  auto corrupted = bytes;
  corrupted[0] = 'X';
  write_file(tmp.path("bad.bin"), corrupted);
  CHECK_THROWS_AS(load_model(tmp.path("bad.bin")), DataError);

  write_file(tmp.path("short.bin"), bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(load_model(tmp.path("short.bin")), DataError);

  auto flipped = bytes;
  flipped[bytes.size() - 20] = static_cast<char>(flipped[bytes.size() - 20] ^ 0x40);
  write_file(tmp.path("flip.bin"), flipped);
  CHECK_THROWS_AS(load_model(tmp.path("flip.bin")), DataError);
}

TEST_CASE("save_model rejects a vocabulary that does not match the table") {
  TempDir tmp("model");
  const auto vocab = build_vocabulary(make_dataset({{"abc", 2}}), VocabOptions{});
  const auto params = init_params({vocab.size() + 3, 4, 4, 4}, 1);
  CHECK_THROWS_AS(save_model(params, vocab, tmp.path("m.bin")), UsageError);
}

}  // TEST_SUITE
