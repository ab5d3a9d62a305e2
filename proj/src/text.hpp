#pragma once

// Small text helpers shared by the file formats. Not part of the public API.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bsmooth::detail {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);
std::vector<std::string> split_fields(std::string_view line, char delimiter);

/// Shortest round-trip-safe rendering: 17 significant digits, %g style.
std::string format_real(double v);
/// Percent with one decimal, e.g. 0.6129 -> "61.3".
std::string format_percent(double fraction);

double parse_real(std::string_view text, const std::string& context);
std::uint64_t parse_count(std::string_view text, const std::string& context);
std::size_t parse_index(std::string_view text, const std::string& context);

std::string read_file(const std::string& path);
/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace bsmooth::detail
