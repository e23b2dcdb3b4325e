#include "sectorinfer/persistence/append_log.hpp"

#include "sectorinfer/common/error.hpp"
#include "sectorinfer/persistence/record.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sectorinfer::persistence {

namespace {

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "MissingLog", path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool parse_seq(std::string_view text, std::uint64_t& out) {
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

ReplayResult parse_log(const std::string& content) {
    ReplayResult result;
    std::size_t pos = 0;
    std::uint64_t last_seq = 0;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        if (nl == std::string::npos) {
            result.truncated = true;
            break;
        }
        const std::string_view line(content.data() + pos, nl - pos);
        const auto tab = line.find('\t');
        std::uint64_t seq = 0;
        if (!parse_seq(line.substr(0, tab), seq) || seq <= last_seq) {
            result.truncated = true;
            break;
        }
        LogRecord rec;
        rec.seq = seq;
        try {
            if (tab != std::string_view::npos) rec.fields = split_record(line.substr(tab + 1));
        } catch (const Error&) {
            result.truncated = true;
            break;
        }
        result.records.push_back(std::move(rec));
        last_seq = seq;
        pos = nl + 1;
        result.valid_bytes = pos;
    }
    return result;
}

}  // namespace

AppendLog::AppendLog(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(path_)) {
        if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
        std::ofstream create(path_, std::ios::binary);
        if (!create) throw Error(ErrorKind::Io, "CreateFailed", path_.string());
        return;
    }
    const std::string content = read_all(path_);
    const auto replayed = parse_log(content);
    if (!replayed.records.empty()) next_seq_ = replayed.records.back().seq + 1;
    partial_tail_ = replayed.truncated;
}

std::uint64_t AppendLog::append(const std::vector<std::string>& fields) {
    if (partial_tail_) throw Error(ErrorKind::Io, "PartialTail", path_.string());
    const std::uint64_t seq = next_seq_;
    std::string line = std::to_string(seq);
    if (!fields.empty()) line += '\t' + join_record(fields);
    line.push_back('\n');

    const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) throw Error(ErrorKind::Io, "OpenFailed", path_.string() + ": " + std::strerror(errno));
    std::size_t written = 0;
    while (written < line.size()) {
        const auto n = ::write(fd, line.data() + written, line.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            const std::string why = std::strerror(errno);
            ::close(fd);
            partial_tail_ = written > 0;
            throw Error(ErrorKind::Io, "WriteFailed", path_.string() + ": " + why);
        }
        written += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
    next_seq_ = seq + 1;
    return seq;
}

ReplayResult AppendLog::replay() const { return replay_file(path_); }

ReplayResult AppendLog::replay_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw Error(ErrorKind::Io, "MissingLog", path.string());
    return parse_log(read_all(path));
}

}  // namespace sectorinfer::persistence
