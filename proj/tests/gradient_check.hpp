#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "snasa/encoder.hpp"
#include "snasa/rng.hpp"
#include "snasa/trainer.hpp"

namespace snasa::testing {

template <typename Params>
struct BlockSpan {
  const char* name;
  std::span<double> data;
};

// Flat views over every parameter block, in the canonical block order.
inline std::vector<BlockSpan<SiameseEncoderParams>> block_spans(SiameseEncoderParams& p) {
  std::vector<BlockSpan<SiameseEncoderParams>> out;
  visit_blocks(p, [&](const char* name, auto& block) {
    out.push_back({name, {block.data(), static_cast<std::size_t>(block.size())}});
  });
  return out;
}

struct FdReport {
  std::size_t entries_checked = 0;
  std::size_t worst_block = 0;
  double worst_rel_err = 0.0;
  double worst_abs_err = 0.0;
  bool passed = true;
  std::string detail;
};

// Central finite differences over every parameter entry against the
// analytic gradient. Entries with |analytic| < abs_gate are held to the
// absolute tolerance instead of the relative one.
inline FdReport check_against_finite_differences(
    SiameseEncoderParams& params, const Gradients& analytic,
    const std::function<double(const SiameseEncoderParams&)>& loss, double step = 1e-5,
    double rel_tol = 1e-4, double abs_gate = 1e-6, double abs_tol = 1e-8) {
  FdReport report;
  auto param_blocks = block_spans(params);
  Gradients analytic_copy = analytic;  // span API needs mutable storage
  auto grad_blocks = block_spans(analytic_copy);

  for (std::size_t b = 0; b < param_blocks.size(); ++b) {
    auto& pb = param_blocks[b].data;
    const auto& gb = grad_blocks[b].data;
    for (std::size_t i = 0; i < pb.size(); ++i) {
      const double saved = pb[i];
      pb[i] = saved + step;
      const double up = loss(params);
      pb[i] = saved - step;
      const double down = loss(params);
      pb[i] = saved;

      const double fd = (up - down) / (2.0 * step);
      const double a = gb[i];
      const double abs_err = std::abs(fd - a);
      ++report.entries_checked;

      bool ok;
      double rel_err = 0.0;
      if (std::abs(a) < abs_gate) {
        ok = abs_err < abs_tol;
      } else {
        rel_err = abs_err / std::max(std::abs(a), std::abs(fd));
        ok = rel_err < rel_tol;
      }
      if (!ok && report.passed) {
        report.passed = false;
        report.detail = std::string(param_blocks[b].name) + "[" + std::to_string(i) +
                        "]: analytic=" + std::to_string(a) + " fd=" + std::to_string(fd);
      }
      if (rel_err > report.worst_rel_err) {
        report.worst_rel_err = rel_err;
        report.worst_block = b;
      }
      report.worst_abs_err = std::max(report.worst_abs_err, abs_err);
    }
  }
  return report;
}

// Random trigram sequence with ids in [0, vocab_size).
inline TrigramSequence random_sequence(Rng& rng, std::size_t vocab_size, std::size_t min_len,
                                       std::size_t max_len) {
  TrigramSequence seq;
  const std::size_t len = min_len + rng.below(max_len - min_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    seq.ids.push_back(static_cast<std::int32_t>(rng.below(vocab_size)));
  }
  return seq;
}

// True when the pair sits safely away from the ReLU and hinge kinks, so
// a finite-difference step cannot cross either.
inline bool pair_away_from_kinks(const TrigramSequence& p, const TrigramSequence& r, int label,
                                 const SiameseEncoderParams& params, double margin,
                                 double guard = 1e-3) {
  EncodeTrace tp, tr;
  const auto sp = encode_traced(p, params, tp);
  const auto sr = encode_traced(r, params, tr);
  if (tp.preact.cwiseAbs().minCoeff() < guard) return false;
  if (tr.preact.cwiseAbs().minCoeff() < guard) return false;
  if (sp.values.norm() < guard || sr.values.norm() < guard) return false;
  if (label == -1) {
    const double c = cosine_similarity(sp, sr);
    if (std::abs(c - margin) < guard) return false;
  }
  return true;
}

}  // namespace snasa::testing
