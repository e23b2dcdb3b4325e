#include "sectorinfer/persistence/record.hpp"

#include "sectorinfer/common/error.hpp"

namespace sectorinfer::persistence {

std::string escape_field(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_field(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        if (escaped[i] != '\\') {
            out.push_back(escaped[i]);
            continue;
        }
        if (++i == escaped.size()) throw Error(ErrorKind::Data, "BadEscape", std::string(escaped));
        switch (escaped[i]) {
            case '\\': out.push_back('\\'); break;
            case 't': out.push_back('\t'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            default: throw Error(ErrorKind::Data, "BadEscape", std::string(escaped));
        }
    }
    return out;
}

std::string join_record(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back('\t');
        line += escape_field(fields[i]);
    }
    return line;
}

std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find('\t', start);
        const auto piece = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        fields.push_back(unescape_field(piece));
        if (pos == std::string_view::npos) return fields;
        start = pos + 1;
    }
}

}  // namespace sectorinfer::persistence
