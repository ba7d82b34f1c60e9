#pragma once

#include <string>
#include <vector>

namespace snasa {

// Whole file as bytes. Throws DataError if unreadable.
std::string read_file(const std::string& path);

// Lines split on LF; a trailing CR is stripped from each line; a final
// line without newline still counts.
std::vector<std::string> read_lines(const std::string& path);

// Throws DataError if the path is unwritable.
void write_file(const std::string& path, const std::string& content);

}  // namespace snasa
