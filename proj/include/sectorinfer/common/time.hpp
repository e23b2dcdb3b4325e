#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace sectorinfer {

using Timestamp = std::chrono::sys_seconds;

/// "2023-01-31T02:00:00Z"
std::string format_timestamp(Timestamp t);

/// Accepts "YYYY-MM-DDTHH:MM:SSZ" or a bare "YYYY-MM-DD" (midnight UTC).
/// Throws Error{Data, "BadTimestamp"} otherwise.
Timestamp parse_timestamp(std::string_view text);

Timestamp now_utc();

}  // namespace sectorinfer
