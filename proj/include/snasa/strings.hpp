#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace snasa {

std::vector<std::string_view> split(std::string_view s, char sep);

// Whitespace tokens (space, \t, \n, \r, \f, \v); empty tokens dropped.
std::vector<std::string_view> split_whitespace(std::string_view s);

std::string_view trim(std::string_view s);

// ASCII A-Z only; multi-byte codepoints pass through untouched.
std::string lowercase_ascii(std::string_view s);

bool iequals_ascii(std::string_view a, std::string_view b);

// Shortest decimal string that round-trips the value. Used for all
// CSV/report output so rewrites are byte-identical.
std::string format_double(double v);

double parse_double(std::string_view s, const std::string& context);
long long parse_int(std::string_view s, const std::string& context);

}  // namespace snasa
