#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sectorinfer::persistence {

/// Writes `content` to a sibling temp file, fsyncs it, then renames over
/// `path`. Readers observe either the old or the new file, never a mix.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Throws Error{Io, "MissingFile"} when absent.
std::string read_file(const std::filesystem::path& path);

/// Whole-file snapshot of line records behind a schema header
/// (`#sectorinfer <schema> v<version>`). Every write atomically replaces the
/// previous snapshot.
class SnapshotStore {
public:
    SnapshotStore(std::filesystem::path path, std::string schema, int version);

    void write(const std::vector<std::string>& lines) const;

    /// nullopt if the file does not exist. Throws Error{Data, "SchemaMismatch"}
    /// when the header names another schema or version.
    std::optional<std::vector<std::string>> read() const;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::string header() const;

    std::filesystem::path path_;
    std::string schema_;
    int version_;
};

/// Exclusive advisory lock (flock) held for the lifetime of the object.
class FileLock {
public:
    explicit FileLock(const std::filesystem::path& path);
    ~FileLock();
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace sectorinfer::persistence
