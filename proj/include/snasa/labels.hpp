#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace snasa {

enum class LabelScheme : std::uint8_t { ThreeClass, FourClass };

std::size_t class_count(LabelScheme scheme);

// Class tokens in canonical order. All tie-breaking anywhere in the
// pipeline uses this order.
//   ThreeClass: neg < neu < pos
//   FourClass:  vneg < neg < pos < vpos
std::span<const std::string_view> class_tokens(LabelScheme scheme);

std::string_view scheme_name(LabelScheme scheme);
std::optional<LabelScheme> parse_scheme(std::string_view name);  // "3"/"4"

// A sentiment class identified by its position in the scheme's canonical
// order. A label is only comparable to labels of the same scheme.
class SentimentLabel {
 public:
  SentimentLabel(LabelScheme scheme, std::uint8_t index);

  LabelScheme scheme() const { return scheme_; }
  std::uint8_t index() const { return index_; }
  std::string_view token() const { return class_tokens(scheme_)[index_]; }

  friend bool operator==(SentimentLabel a, SentimentLabel b) = default;

 private:
  LabelScheme scheme_;
  std::uint8_t index_;
};

// Case-insensitive parse from {neg, neu, pos, vneg, vpos}, restricted to
// the tokens valid under the scheme. nullopt for unknown tokens.
std::optional<SentimentLabel> parse_label(std::string_view token, LabelScheme scheme);

}  // namespace snasa
