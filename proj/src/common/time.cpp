#include "sectorinfer/common/time.hpp"

#include "sectorinfer/common/error.hpp"

#include <cstdio>
#include <ctime>

namespace sectorinfer {

std::string format_timestamp(Timestamp t) {
    const std::time_t raw = t.time_since_epoch().count();
    std::tm tm{};
    gmtime_r(&raw, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Timestamp parse_timestamp(std::string_view text) {
    std::tm tm{};
    int consumed = 0;
    const std::string s(text);
    if (s.size() == 10 && std::sscanf(s.c_str(), "%4d-%2d-%2d%n", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &consumed) == 3 &&
        consumed == 10) {
        // date only
    } else if (s.size() == 20 &&
               std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ%n", &tm.tm_year, &tm.tm_mon, &tm.tm_mday, &tm.tm_hour,
                           &tm.tm_min, &tm.tm_sec, &consumed) == 6 &&
               consumed == 20) {
    } else {
        throw Error(ErrorKind::Data, "BadTimestamp", s);
    }
    if (tm.tm_mon < 1 || tm.tm_mon > 12 || tm.tm_mday < 1 || tm.tm_mday > 31 || tm.tm_hour > 23 || tm.tm_min > 59 ||
        tm.tm_sec > 60) {
        throw Error(ErrorKind::Data, "BadTimestamp", s);
    }
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    return Timestamp{std::chrono::seconds{timegm(&tm)}};
}

Timestamp now_utc() { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); }

}  // namespace sectorinfer
