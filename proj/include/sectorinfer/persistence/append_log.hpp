#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace sectorinfer::persistence {

struct LogRecord {
    std::uint64_t seq = 0;
    std::vector<std::string> fields;

    bool operator==(const LogRecord&) const = default;
};

struct ReplayResult {
    std::vector<LogRecord> records;
    /// True when replay stopped early at an incomplete or malformed line.
    bool truncated = false;
    /// Byte length of the valid prefix.
    std::uintmax_t valid_bytes = 0;
};

/// Append-only record log. Each line is `seq<TAB>field...`; sequence numbers
/// start at 1 and strictly increase. The artifact never truncates the file.
///
/// Single writer per file; readers may replay any prefix concurrently.
class AppendLog {
public:
    /// Creates the file if it does not exist and positions the sequence
    /// counter after the last complete record.
    explicit AppendLog(std::filesystem::path path);

    /// Durable append (write + fsync). Returns the record's sequence number.
    /// Throws Error{Io, "PartialTail"} if the file ends in an incomplete line
    /// left by an interrupted writer; such a log needs manual repair.
    std::uint64_t append(const std::vector<std::string>& fields);

    ReplayResult replay() const;

    std::uint64_t next_sequence() const noexcept { return next_seq_; }
    const std::filesystem::path& path() const noexcept { return path_; }

    /// Throws Error{Io, "MissingLog"} if the file does not exist.
    static ReplayResult replay_file(const std::filesystem::path& path);

private:
    std::filesystem::path path_;
    std::uint64_t next_seq_ = 1;
    bool partial_tail_ = false;
};

}  // namespace sectorinfer::persistence
