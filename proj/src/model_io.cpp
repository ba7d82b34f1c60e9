#include "snasa/model_io.hpp"

#include <bit>
#include <cstring>

#include "snasa/error.hpp"
#include "snasa/fileio.hpp"

static_assert(std::endian::native == std::endian::little,
              "model serialization assumes a little-endian host");

namespace snasa {

namespace {

constexpr char kMagic[] = "SNASA1";
constexpr std::size_t kMagicLen = 6;

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(const char* data, std::size_t n, std::uint64_t hash = kFnvOffset) {
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= static_cast<unsigned char>(data[i]);
    hash *= kFnvPrime;
  }
  return hash;
}

void put_u64(std::string& out, std::uint64_t v) {
  char buf[8];
  std::memcpy(buf, &v, 8);
  out.append(buf, 8);
}

void put_matrix_rowmajor(std::string& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      char buf[8];
      std::memcpy(buf, &v, 8);
      out.append(buf, 8);
    }
  }
}

void put_vector(std::string& out, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = v(i);
    char buf[8];
    std::memcpy(buf, &x, 8);
    out.append(buf, 8);
  }
}

void put_cell(std::string& out, const LstmCellParams& cell) {
  const int h = cell.hidden_size();
  for (int gate = 0; gate < 4; ++gate) {
    put_matrix_rowmajor(out, cell.w_input.middleRows(gate * h, h));
    put_matrix_rowmajor(out, cell.w_recurrent.middleRows(gate * h, h));
    put_vector(out, cell.bias.segment(gate * h, h));
  }
}

std::string parameter_block(const SiameseEncoderParams& p) {
  std::string out;
  const auto dims = p.dims();
  const std::size_t doubles = dims.vocab_size * dims.embedding +
                              2 * 4 * (static_cast<std::size_t>(dims.hidden) * dims.embedding +
                                       static_cast<std::size_t>(dims.hidden) * dims.hidden +
                                       dims.hidden) +
                              static_cast<std::size_t>(dims.output) * 2 * dims.hidden + dims.output;
  out.reserve(doubles * 8);
  put_matrix_rowmajor(out, p.embeddings);
  put_cell(out, p.fw);
  put_cell(out, p.bw);
  put_matrix_rowmajor(out, p.dense_w);
  put_vector(out, p.dense_b);
  return out;
}

class Reader {
 public:
  Reader(const std::string& data, const std::string& path) : data_(data), path_(path) {}

  const char* take(std::size_t n) {
    if (pos_ + n > data_.size()) {
      throw DataError("truncated model file '" + path_ + "'");
    }
    const char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }

  std::uint64_t take_u64() {
    std::uint64_t v;
    std::memcpy(&v, take(8), 8);
    return v;
  }

  double take_double() {
    double v;
    std::memcpy(&v, take(8), 8);
    return v;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  const std::string& data_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

void read_matrix_rowmajor(Reader& r, Eigen::MatrixXd& m) {
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      m(row, col) = r.take_double();
    }
  }
}

void read_vector(Reader& r, Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = r.take_double();
}

void read_cell(Reader& r, LstmCellParams& cell, int h, int e) {
  cell.w_input.resize(4 * h, e);
  cell.w_recurrent.resize(4 * h, h);
  cell.bias.resize(4 * h);
  for (int gate = 0; gate < 4; ++gate) {
    Eigen::MatrixXd wx(h, e);
    read_matrix_rowmajor(r, wx);
    cell.w_input.middleRows(gate * h, h) = wx;
    Eigen::MatrixXd wh(h, h);
    read_matrix_rowmajor(r, wh);
    cell.w_recurrent.middleRows(gate * h, h) = wh;
    read_vector(r, cell.bias.segment(gate * h, h));
  }
}

}  // namespace

std::uint64_t params_checksum(const SiameseEncoderParams& params) {
  const std::string block = parameter_block(params);
  return fnv1a(block.data(), block.size());
}

void save_model(const SiameseEncoderParams& params, const TrigramVocabulary& vocab,
                const std::string& path) {
  const auto dims = params.dims();
  if (dims.vocab_size != vocab.size()) {
    throw UsageError("model embedding rows (" + std::to_string(dims.vocab_size) +
                     ") do not match vocabulary size (" + std::to_string(vocab.size()) + ")");
  }
  std::string out(kMagic, kMagicLen);
  put_u64(out, dims.vocab_size);
  put_u64(out, static_cast<std::uint64_t>(dims.embedding));
  put_u64(out, static_cast<std::uint64_t>(dims.hidden));
  put_u64(out, static_cast<std::uint64_t>(dims.output));
  out += vocabulary_to_string(vocab);
  const std::string block = parameter_block(params);
  out += block;
  put_u64(out, fnv1a(block.data(), block.size()));
  write_file(path, out);
}

Model load_model(const std::string& path) {
  const std::string data = read_file(path);
  Reader r(data, path);

  if (std::memcmp(r.take(kMagicLen), kMagic, kMagicLen) != 0) {
    throw DataError("not a model file (bad magic / version) in '" + path + "'");
  }
  EncoderDims dims;
  dims.vocab_size = r.take_u64();
  dims.embedding = static_cast<int>(r.take_u64());
  dims.hidden = static_cast<int>(r.take_u64());
  dims.output = static_cast<int>(r.take_u64());
  if (dims.vocab_size < 1 || dims.embedding < 1 || dims.hidden < 1 || dims.output < 1) {
    throw DataError("corrupt dimensions in model file '" + path + "'");
  }

  // The vocabulary block is exactly |V| newline-terminated lines: the
  // header plus one trigram per id 1..|V|-1.
  const std::size_t vocab_start = r.pos();
  std::size_t lines_seen = 0;
  std::size_t cursor = vocab_start;
  while (lines_seen < dims.vocab_size) {
    const std::size_t nl = data.find('\n', cursor);
    if (nl == std::string::npos) {
      throw DataError("truncated vocabulary block in model file '" + path + "'");
    }
    cursor = nl + 1;
    ++lines_seen;
  }
  TrigramVocabulary vocab =
      vocabulary_from_string(std::string_view(data).substr(vocab_start, cursor - vocab_start));
  if (vocab.size() != dims.vocab_size) {
    throw DataError("vocabulary size disagrees with header in model file '" + path + "'");
  }
  r.take(cursor - vocab_start);

  SiameseEncoderParams p;
  const std::size_t block_start = r.pos();
  p.embeddings.resize(static_cast<Eigen::Index>(dims.vocab_size), dims.embedding);
  read_matrix_rowmajor(r, p.embeddings);
  read_cell(r, p.fw, dims.hidden, dims.embedding);
  read_cell(r, p.bw, dims.hidden, dims.embedding);
  p.dense_w.resize(dims.output, 2 * dims.hidden);
  read_matrix_rowmajor(r, p.dense_w);
  p.dense_b.resize(dims.output);
  read_vector(r, p.dense_b);
  const std::size_t block_end = r.pos();

  const std::uint64_t stored = r.take_u64();
  const std::uint64_t actual = fnv1a(data.data() + block_start, block_end - block_start);
  if (stored != actual) {
    throw DataError("parameter checksum mismatch in model file '" + path + "'");
  }
  if (r.remaining() != 0) {
    throw DataError("trailing bytes in model file '" + path + "'");
  }
  return {std::move(p), std::move(vocab)};
}

}  // namespace snasa
