#pragma once

#include <cstdint>
#include <string>

#include "snasa/encoder.hpp"
#include "snasa/featurizer.hpp"

namespace snasa {

// A trained encoder and the vocabulary its embedding table indexes.
struct Model {
  SiameseEncoderParams params;
  TrigramVocabulary vocab;
};

// FNV-1a over the serialized parameter block. Stored in the model file
// and recorded by reference sets so stale embeddings are detectable.
std::uint64_t params_checksum(const SiameseEncoderParams& params);

// Binary layout: magic "SNASA1"; |V|, e, h, d as 64-bit little-endian
// integers; the vocabulary block in its text format; every parameter
// matrix row-major as 64-bit little-endian reals (embedding table, then
// per direction the four gates' input weights / recurrent weights / bias
// in gate order input, forget, cell, output, then dense weights and
// bias); a trailing checksum of the parameter block.
// Saves are byte-deterministic; load(save(m)) is bit-exact.
void save_model(const SiameseEncoderParams& params, const TrigramVocabulary& vocab,
                const std::string& path);

Model load_model(const std::string& path);

}  // namespace snasa
