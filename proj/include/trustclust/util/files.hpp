#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace trustclust {

/// Writes `content` to a sibling temp file and renames it over `path`.
/// Throws Error{Io} on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Splits one comma-separated line. No quoting; fields are trimmed of a trailing '\r'.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace trustclust
