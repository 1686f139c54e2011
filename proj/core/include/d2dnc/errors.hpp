#pragma once

#include <stdexcept>
#include <string>

namespace d2dnc {

enum class ErrorCode {
    FailedAfterRetries,
    NotInstantlyDecodable,
    DegenerateErasure,
    RevisitedStructure,
    MaxRoundsExceeded,
    ConfigError,
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::FailedAfterRetries: return "FAILED_AFTER_RETRIES";
        case ErrorCode::NotInstantlyDecodable: return "NOT_INSTANTLY_DECODABLE";
        case ErrorCode::DegenerateErasure: return "DEGENERATE_ERASURE";
        case ErrorCode::RevisitedStructure: return "REVISITED_STRUCTURE";
        case ErrorCode::MaxRoundsExceeded: return "MAX_ROUNDS_EXCEEDED";
        case ErrorCode::ConfigError: return "CONFIG_ERROR";
        case ErrorCode::IoError: return "IO_ERROR";
    }
    return "UNKNOWN";
}

}  // namespace d2dnc
