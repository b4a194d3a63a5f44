#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bassdiff {

enum class ErrorCode {
    EmptyInput,
    Format,
    Validation,
    Parameter,
    InsufficientData,
    SingularFit,
    NonDiffusionShape,
    NoRealMarketSize,
    Divergence,
    Shape,
    UndefinedBaseline,
    DegeneratePlot,
    Io,
};

// Stable snake_case identifier, used in JSON payloads and CLI messages.
std::string_view to_string(ErrorCode code) noexcept;

// Broad family used for CLI exit codes.
enum class ErrorFamily { Input, Numeric, Io };

ErrorFamily family_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    ErrorFamily family() const noexcept { return family_of(code_); }

private:
    ErrorCode code_;
};

} // namespace bassdiff
