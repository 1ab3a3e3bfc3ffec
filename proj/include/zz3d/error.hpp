#pragma once

#include <stdexcept>
#include <string>

namespace zz3d {

enum class errc {
    invalid_dimension,
    shape_mismatch,
    domain,
    invalid_config,
    corrupt_stream,
    format,
    io,
    refused,
};

inline const char* to_string(errc code) noexcept {
    switch (code) {
    case errc::invalid_dimension: return "invalid dimension";
    case errc::shape_mismatch: return "shape mismatch";
    case errc::domain: return "domain error";
    case errc::invalid_config: return "invalid config";
    case errc::corrupt_stream: return "corrupt stream";
    case errc::format: return "format error";
    case errc::io: return "i/o error";
    case errc::refused: return "refused";
    }
    return "unknown error";
}

/// Every failure raised by the library carries one of the errc categories.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), message_(what) {}

    errc code() const noexcept { return code_; }
    /// what() without the category prefix.
    const std::string& message() const noexcept { return message_; }

private:
    errc code_;
    std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace zz3d
