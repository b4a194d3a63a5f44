#include <catch2/catch_amalgamated.hpp>

#include <bassdiff/error.hpp>
#include <bassdiff/evaluate.hpp>
#include <bassdiff/fit.hpp>
#include <bassdiff/report.hpp>
#include <bassdiff/synthetic.hpp>
#include <bassdiff/tail.hpp>

#include <json.hpp>

using namespace bassdiff;
using nlohmann::json;

namespace {

EvaluationDocument sample_document() {
    const auto series = generate_mono_peak(MonoPeakSpec{});
    EvaluationDocument doc;
    doc.source = "synth.csv";
    doc.unit = series.unit();
    doc.coefficients = fit_quadratic(series);
    const auto tail = profile(series);
    doc.reports.push_back(compare_models(series, doc.coefficients, tail, ForecastMode::Simulated));
    doc.reports.push_back(compare_models(series, doc.coefficients, tail, ForecastMode::OneStep));
    return doc;
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
    for (const auto& p : problems) {
        if (p.find(needle) != std::string::npos) return true;
    }
    return false;
}

} // namespace

TEST_CASE("evaluation document is valid and round-trips numbers", "[report]") {
    const auto doc = sample_document();
    const auto text = document_to_json(doc);
    CHECK(validate_report_json(text).empty());

    const auto j = json::parse(text);
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["n_obs"] == 228);
    CHECK(j["coefficients"]["a"].get<double>() == doc.coefficients.a);
    CHECK(j["coefficients"]["c"].get<double>() == doc.coefficients.c);
    const auto& r0 = j["reports"][0];
    CHECK(r0["mode"] == "simulated");
    CHECK(r0["sse_classical"].get<double>() == doc.reports[0].sse_classical);
    CHECK(r0["improvement_percent"].get<double>() == doc.reports[0].improvement_percent);
    CHECK(r0["tail_profile"]["tail_per"].get<double>() == doc.reports[0].tail_profile.tail_per);
    CHECK(r0["candidates"].size() == 3);
    CHECK(j["reports"][1]["mode"] == "one_step");

    CHECK(document_to_json(doc) == text);
}

TEST_CASE("validator reports broken documents", "[report]") {
    const auto good = json::parse(document_to_json(sample_document()));

    CHECK(mentions(validate_report_json("{"), "not valid JSON"));
    CHECK(!validate_report_json("[]").empty());

    auto j = good;
    j.erase("coefficients");
    CHECK(mentions(validate_report_json(j.dump()), "/coefficients: missing"));

    j = good;
    j["reports"][0]["sse_modified"] = -1.0;
    CHECK(mentions(validate_report_json(j.dump()), "/reports/0/sse_modified"));

    j = good;
    j["reports"][0]["variant_used"] = "auto";
    CHECK(mentions(validate_report_json(j.dump()), "/reports/0/variant_used"));

    j = good;
    j["reports"][1]["improvement_percent"] = 12.5;
    CHECK(mentions(validate_report_json(j.dump()), "/reports/1/improvement_percent"));

    j = good;
    j["schema_version"] = 99;
    CHECK(mentions(validate_report_json(j.dump()), "/schema_version"));

    j = good;
    j["reports"] = json::array();
    CHECK(mentions(validate_report_json(j.dump()), "/reports"));
}

TEST_CASE("fit JSON carries Bass parameters or the reason they are missing", "[report]") {
    QuadraticCoefficients q;
    q.a = 10;
    q.b = 0.5;
    q.c = -0.001;
    q.n_obs = 30;
    auto j = json::parse(fit_to_json(q));
    CHECK(j["a"].get<double>() == 10.0);
    CHECK(j["n_obs"] == 30);
    REQUIRE(j["bass_parameters"].is_object());
    CHECK(j["bass_parameters"]["m"].get<double>() == derive_bass_parameters(q).m);

    q.c = 0.001;
    j = json::parse(fit_to_json(q));
    CHECK(j["bass_parameters"].is_null());
    CHECK(j["bass_parameters_error"]["code"] == "non_diffusion_shape");
}

TEST_CASE("undefined improvement serialises as null", "[report]") {
    auto doc = sample_document();
    doc.reports[0].sse_classical = 0.0;
    doc.reports[0].sse_modified = 1.0;
    doc.reports[0].improvement_percent = std::numeric_limits<double>::quiet_NaN();
    const auto text = document_to_json(doc);
    CHECK(json::parse(text)["reports"][0]["improvement_percent"].is_null());
    CHECK(validate_report_json(text).empty());
}
