#pragma once

#include <stdexcept>
#include <string>

namespace twinlab {

// Error categories map one-to-one onto CLI exit codes and the
// machine-parsable "error: <category>: ..." line printed on stderr.
enum class ErrorCategory {
    usage,   // bad command line
    config,  // bad configuration file or key
    io,      // file system failures
    format,  // malformed binary/CSV input
    domain,  // preconditions on values (dimensions, ranges, degenerate stats)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), cat_(cat) {}

    ErrorCategory category() const noexcept { return cat_; }

private:
    ErrorCategory cat_;
};

inline const char* to_string(ErrorCategory cat) noexcept {
    switch (cat) {
        case ErrorCategory::usage: return "usage";
        case ErrorCategory::config: return "config";
        case ErrorCategory::io: return "io";
        case ErrorCategory::format: return "format";
        case ErrorCategory::domain: return "domain";
    }
    return "unknown";
}

}  // namespace twinlab
