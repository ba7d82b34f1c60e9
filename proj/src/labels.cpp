#include "snasa/labels.hpp"

#include <array>

#include "snasa/error.hpp"
#include "snasa/strings.hpp"

namespace snasa {

namespace {
constexpr std::array<std::string_view, 3> kThreeClass = {"neg", "neu", "pos"};
constexpr std::array<std::string_view, 4> kFourClass = {"vneg", "neg", "pos", "vpos"};
}  // namespace

std::size_t class_count(LabelScheme scheme) {
  return scheme == LabelScheme::ThreeClass ? kThreeClass.size() : kFourClass.size();
}

std::span<const std::string_view> class_tokens(LabelScheme scheme) {
  if (scheme == LabelScheme::ThreeClass) return kThreeClass;
  return kFourClass;
}

std::string_view scheme_name(LabelScheme scheme) {
  return scheme == LabelScheme::ThreeClass ? "3" : "4";
}

std::optional<LabelScheme> parse_scheme(std::string_view name) {
  if (name == "3") return LabelScheme::ThreeClass;
  if (name == "4") return LabelScheme::FourClass;
  return std::nullopt;
}

SentimentLabel::SentimentLabel(LabelScheme scheme, std::uint8_t index)
    : scheme_(scheme), index_(index) {
  if (index >= class_count(scheme)) {
    throw UsageError("label index " + std::to_string(index) + " out of range for scheme");
  }
}

std::optional<SentimentLabel> parse_label(std::string_view token, LabelScheme scheme) {
  const auto tokens = class_tokens(scheme);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (iequals_ascii(token, tokens[i])) {
      return SentimentLabel(scheme, static_cast<std::uint8_t>(i));
    }
  }
  return std::nullopt;
}

}  // namespace snasa
