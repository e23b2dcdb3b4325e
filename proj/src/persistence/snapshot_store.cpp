#include "sectorinfer/persistence/snapshot_store.hpp"

#include "sectorinfer/common/error.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sectorinfer::persistence {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw Error(ErrorKind::Io, "OpenFailed", tmp + ": " + std::strerror(errno));
    std::size_t written = 0;
    while (written < content.size()) {
        const auto n = ::write(fd, content.data() + written, content.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            const std::string why = std::strerror(errno);
            ::close(fd);
            throw Error(ErrorKind::Io, "WriteFailed", tmp + ": " + why);
        }
        written += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::Io, "RenameFailed", path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "MissingFile", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SnapshotStore::SnapshotStore(std::filesystem::path path, std::string schema, int version)
    : path_(std::move(path)), schema_(std::move(schema)), version_(version) {}

std::string SnapshotStore::header() const { return "#sectorinfer " + schema_ + " v" + std::to_string(version_); }

void SnapshotStore::write(const std::vector<std::string>& lines) const {
    std::string content = header() + "\n";
    for (const auto& line : lines) {
        content += line;
        content.push_back('\n');
    }
    write_file_atomic(path_, content);
}

std::optional<std::vector<std::string>> SnapshotStore::read() const {
    if (!std::filesystem::exists(path_)) return std::nullopt;
    std::istringstream in(read_file(path_));
    std::string line;
    if (!std::getline(in, line) || line != header()) {
        throw Error(ErrorKind::Data, "SchemaMismatch", path_.string() + ": expected '" + header() + "'");
    }
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

FileLock::FileLock(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorKind::Io, "LockFailed", path.string() + ": " + std::strerror(errno));
    if (::flock(fd_, LOCK_EX) != 0) {
        ::close(fd_);
        throw Error(ErrorKind::Io, "LockFailed", path.string() + ": " + std::strerror(errno));
    }
}

FileLock::~FileLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

}  // namespace sectorinfer::persistence
