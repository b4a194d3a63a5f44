#include <bassdiff/error.hpp>

namespace bassdiff {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput: return "empty_input";
        case ErrorCode::Format: return "format";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Parameter: return "parameter";
        case ErrorCode::InsufficientData: return "insufficient_data";
        case ErrorCode::SingularFit: return "singular_fit";
        case ErrorCode::NonDiffusionShape: return "non_diffusion_shape";
        case ErrorCode::NoRealMarketSize: return "no_real_market_size";
        case ErrorCode::Divergence: return "divergence";
        case ErrorCode::Shape: return "shape";
        case ErrorCode::UndefinedBaseline: return "undefined_baseline";
        case ErrorCode::DegeneratePlot: return "degenerate_plot";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

ErrorFamily family_of(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyInput:
        case ErrorCode::Format:
        case ErrorCode::Validation:
        case ErrorCode::Parameter:
        case ErrorCode::DegeneratePlot:
            return ErrorFamily::Input;
        case ErrorCode::Io:
            return ErrorFamily::Io;
        default:
            return ErrorFamily::Numeric;
    }
}

} // namespace bassdiff
