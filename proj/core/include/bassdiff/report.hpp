#pragma once

#include <bassdiff/evaluate.hpp>
#include <bassdiff/fit.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace bassdiff {

inline constexpr int kReportSchemaVersion = 1;

// Pretty-printed JSON text; doubles use shortest round-trip form.
std::string fit_to_json(const QuadraticCoefficients& coeffs);
std::string report_to_json(const EvaluationReport& report);

struct EvaluationDocument {
    std::string source;  // input file name as given, no directory
    std::string unit;
    QuadraticCoefficients coefficients;
    std::vector<EvaluationReport> reports;
};

std::string document_to_json(const EvaluationDocument& doc);

/// Structural check of a report.json payload. Returns one message per
/// problem found; empty means valid.
std::vector<std::string> validate_report_json(std::string_view text);

} // namespace bassdiff
