#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::persistence {

// Line framing shared by every file the artifact writes: one record per
// line, fields separated by TAB, with backslash escapes for TAB, CR, LF and
// backslash itself.

std::string escape_field(std::string_view raw);

/// Throws Error{Data, "BadEscape"} on a dangling or unknown escape.
std::string unescape_field(std::string_view escaped);

std::string join_record(const std::vector<std::string>& fields);
std::vector<std::string> split_record(std::string_view line);

}  // namespace sectorinfer::persistence
