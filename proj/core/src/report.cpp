#include <bassdiff/report.hpp>

#include <bassdiff/error.hpp>

#include <json.hpp>

#include <cmath>
#include <set>

namespace bassdiff {

namespace {

using nlohmann::ordered_json;

ordered_json coefficients_json(const QuadraticCoefficients& c) {
    return ordered_json{{"a", c.a}, {"b", c.b}, {"c", c.c}, {"residual_sse", c.residual_sse}, {"n_obs", c.n_obs}};
}

ordered_json metrics_json(const ErrorMetrics& m) {
    return ordered_json{{"rmse", m.rmse}, {"mae", m.mae}, {"mape", m.mape}, {"mape_skipped", m.mape_skipped}};
}

ordered_json report_json(const EvaluationReport& r) {
    ordered_json j;
    j["sse_classical"] = r.sse_classical;
    j["sse_modified"] = r.sse_modified;
    j["variant_used"] = std::string(to_string(r.variant_used));
    j["improvement_percent"] = r.improvement_percent;
    j["mode"] = std::string(to_string(r.mode));
    const auto& t = r.tail_profile;
    j["tail_profile"] = ordered_json{{"peak_index", t.peak_index}, {"peak_value", t.peak_value},
                                     {"tail_start_index", t.tail_start_index}, {"tail_per", t.tail_per},
                                     {"r1", t.r1}, {"r2", t.r2}};
    j["correction_term"] = r.correction_term;
    j["metrics"] = ordered_json{{"classical", metrics_json(r.metrics_classical)},
                                {"modified", metrics_json(r.metrics_modified)}};
    auto candidates = ordered_json::array();
    for (const auto& c : r.candidates) {
        candidates.push_back(ordered_json{{"variant", std::string(to_string(c.variant))}, {"sse", c.sse}});
    }
    j["candidates"] = std::move(candidates);
    return j;
}

// Collects schema violations under a JSON-pointer-ish path.
class Checker {
public:
    std::vector<std::string> problems;

    const nlohmann::json* field(const nlohmann::json& obj, const std::string& path, const char* key) {
        if (!obj.is_object() || !obj.contains(key)) {
            problems.push_back(path + "/" + key + ": missing");
            return nullptr;
        }
        return &obj.at(key);
    }

    void number(const nlohmann::json& obj, const std::string& path, const char* key,
                bool nullable = false, bool nonnegative = false) {
        const auto* v = field(obj, path, key);
        if (v == nullptr) return;
        if (v->is_null() && nullable) return;
        if (!v->is_number()) {
            problems.push_back(path + "/" + key + ": expected number");
        } else if (nonnegative && v->get<double>() < 0.0) {
            problems.push_back(path + "/" + key + ": must be >= 0");
        }
    }

    void count(const nlohmann::json& obj, const std::string& path, const char* key) {
        const auto* v = field(obj, path, key);
        if (v != nullptr && !v->is_number_unsigned()) {
            problems.push_back(path + "/" + key + ": expected non-negative integer");
        }
    }

    void text(const nlohmann::json& obj, const std::string& path, const char* key,
              const std::set<std::string>& allowed = {}) {
        const auto* v = field(obj, path, key);
        if (v == nullptr) return;
        if (!v->is_string()) {
            problems.push_back(path + "/" + key + ": expected string");
        } else if (!allowed.empty() && !allowed.contains(v->get<std::string>())) {
            problems.push_back(path + "/" + key + ": unexpected value '" + v->get<std::string>() + "'");
        }
    }
};

} // namespace

std::string fit_to_json(const QuadraticCoefficients& coeffs) {
    ordered_json j = coefficients_json(coeffs);
    const auto derived = try_derive_bass_parameters(coeffs);
    if (const auto* p = std::get_if<BassParameters>(&derived)) {
        j["bass_parameters"] = ordered_json{{"p", p->p}, {"q", p->q}, {"m", p->m}};
    } else {
        const auto& err = std::get<Error>(derived);
        j["bass_parameters"] = nullptr;
        j["bass_parameters_error"] =
            ordered_json{{"code", std::string(to_string(err.code()))}, {"message", err.what()}};
    }
    return j.dump(2) + "\n";
}

std::string report_to_json(const EvaluationReport& report) { return report_json(report).dump(2) + "\n"; }

std::string document_to_json(const EvaluationDocument& doc) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["source"] = doc.source;
    j["unit"] = doc.unit;
    j["n_obs"] = doc.coefficients.n_obs;
    j["coefficients"] = coefficients_json(doc.coefficients);
    auto reports = ordered_json::array();
    for (const auto& r : doc.reports) reports.push_back(report_json(r));
    j["reports"] = std::move(reports);
    return j.dump(2) + "\n";
}

std::vector<std::string> validate_report_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        return {std::string("not valid JSON: ") + e.what()};
    }
    Checker check;
    if (!doc.is_object()) return {"top level must be an object"};

    if (const auto* v = check.field(doc, "", "schema_version");
        v != nullptr && (!v->is_number_integer() || v->get<int>() != kReportSchemaVersion)) {
        check.problems.push_back("/schema_version: expected " + std::to_string(kReportSchemaVersion));
    }
    check.text(doc, "", "source");
    check.text(doc, "", "unit");
    check.count(doc, "", "n_obs");
    if (const auto* c = check.field(doc, "", "coefficients")) {
        for (const char* key : {"a", "b", "c"}) check.number(*c, "/coefficients", key);
        check.number(*c, "/coefficients", "residual_sse", false, true);
        check.count(*c, "/coefficients", "n_obs");
    }

    const auto* reports = check.field(doc, "", "reports");
    if (reports != nullptr && (!reports->is_array() || reports->empty())) {
        check.problems.push_back("/reports: expected non-empty array");
        reports = nullptr;
    }
    if (reports == nullptr) return check.problems;

    for (std::size_t i = 0; i < reports->size(); ++i) {
        const auto& r = (*reports)[i];
        const std::string path = "/reports/" + std::to_string(i);
        check.number(r, path, "sse_classical", false, true);
        check.number(r, path, "sse_modified", false, true);
        check.text(r, path, "variant_used", {"classical", "modified_add", "modified_subtract"});
        check.number(r, path, "improvement_percent", true);
        check.text(r, path, "mode", {"one_step", "simulated"});
        check.number(r, path, "correction_term");
        if (const auto* t = check.field(r, path, "tail_profile")) {
            check.count(*t, path + "/tail_profile", "peak_index");
            check.number(*t, path + "/tail_profile", "peak_value");
            check.count(*t, path + "/tail_profile", "tail_start_index");
            check.number(*t, path + "/tail_profile", "tail_per", false, true);
            check.number(*t, path + "/tail_profile", "r1");
            check.number(*t, path + "/tail_profile", "r2");
        }
        if (const auto* m = check.field(r, path, "metrics")) {
            for (const char* side : {"classical", "modified"}) {
                const auto mpath = path + "/metrics/" + side;
                if (const auto* s = check.field(*m, path + "/metrics", side)) {
                    check.number(*s, mpath, "rmse", false, true);
                    check.number(*s, mpath, "mae", false, true);
                    check.number(*s, mpath, "mape", true, true);
                    check.count(*s, mpath, "mape_skipped");
                }
            }
        }
        if (const auto* c = check.field(r, path, "candidates"); c != nullptr && !c->is_array()) {
            check.problems.push_back(path + "/candidates: expected array");
        }
        // improvement must agree with the two SSE values it summarises
        if (r.is_object() && r.value("sse_classical", nlohmann::json()).is_number() &&
            r.value("sse_modified", nlohmann::json()).is_number() &&
            r.value("improvement_percent", nlohmann::json()).is_number()) {
            const double base = r["sse_classical"].get<double>();
            const double mod = r["sse_modified"].get<double>();
            const double imp = r["improvement_percent"].get<double>();
            if (base > 0.0 && std::abs((base - mod) / base * 100.0 - imp) > 1e-9 * std::max(1.0, std::abs(imp))) {
                check.problems.push_back(path + "/improvement_percent: inconsistent with SSE values");
            }
        }
    }
    return check.problems;
}

} // namespace bassdiff
