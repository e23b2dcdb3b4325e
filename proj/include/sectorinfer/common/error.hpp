#pragma once

#include <stdexcept>
#include <string>

namespace sectorinfer {

/// Broad classes of failure; the CLI maps them onto exit codes.
enum class ErrorKind {
    Config,  // malformed configuration or arguments
    Data,    // invalid or inconsistent input data
    Io,      // filesystem failures
    Model,   // training divergence, corrupt checkpoints
    Qa,      // release blocked by the QA gate
};

/// Base for every error raised by the library. `code()` is a short
/// machine-readable token such as "DuplicateName".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), kind_(kind), code_(std::move(code)), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string code_;
    std::string detail_;
};

}  // namespace sectorinfer
