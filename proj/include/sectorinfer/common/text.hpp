#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

/// Splits on runs of ASCII whitespace; no empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

/// Splits on every occurrence of `sep`; keeps empty pieces.
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_lowercase(std::string_view s);

}  // namespace sectorinfer::text
