#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace snasa::utf8 {

// Decodes UTF-8 into codepoints. Throws DataError on malformed input
// (overlong forms, truncated sequences, surrogates, > U+10FFFF).
std::vector<char32_t> decode(std::string_view text);

void append(std::string& out, char32_t cp);

std::string encode(const char32_t* cps, std::size_t n);

inline std::string encode(const std::vector<char32_t>& cps) {
  return encode(cps.data(), cps.size());
}

}  // namespace snasa::utf8
