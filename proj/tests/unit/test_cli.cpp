#include <catch2/catch_amalgamated.hpp>

#include "cli/app.hpp"

#include <bassdiff/report.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using bassdiff::cli::run;
using nlohmann::json;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("bassdiff_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace

TEST_CASE("help exits cleanly", "[cli]") {
    const auto o = invoke({"--help"});
    CHECK(o.code == 0);
    for (const char* sub : {"fit", "forecast", "evaluate", "plot", "synth", "batch"}) {
        CHECK(o.out.find(sub) != std::string::npos);
    }
    CHECK(invoke({"evaluate", "--help"}).out.find("--sse-pair") != std::string::npos);
}

TEST_CASE("fit recovers coefficients from a generated recursion", "[cli]") {
    const auto dir = scratch("fit");
    const auto csv = dir / "bass.csv";
    REQUIRE(invoke({"synth", "--kind", "bass", "--n", "30", "--out", csv.string()}).code == 0);
    const auto o = invoke({"fit", "-i", csv.string(), "-o", dir.string()});
    REQUIRE(o.code == 0);
    const auto j = json::parse(slurp(dir / "fit.json"));
    CHECK_THAT(j["a"].get<double>(), WithinRel(10.0, 1e-6));
    CHECK_THAT(j["b"].get<double>(), WithinRel(0.5, 1e-6));
    CHECK_THAT(j["c"].get<double>(), WithinRel(-0.001, 1e-6));
    CHECK(j["n_obs"] == 30);
    CHECK(j["bass_parameters"].is_object());
}

TEST_CASE("constant demand fits and reports the missing Bass parameters", "[cli]") {
    const auto dir = scratch("constant");
    spit(dir / "flat.csv", "period,demand\n1,5\n2,5\n3,5\n4,5\n5,5\n");
    REQUIRE(invoke({"fit", "-i", (dir / "flat.csv").string(), "-o", dir.string()}).code == 0);
    const auto j = json::parse(slurp(dir / "fit.json"));
    CHECK_THAT(j["a"].get<double>(), WithinAbs(5.0, 1e-9));
    CHECK(j["bass_parameters"].is_null());
    CHECK(j["bass_parameters_error"]["code"] == "non_diffusion_shape");
}

TEST_CASE("exit codes by failure family", "[cli]") {
    const auto dir = scratch("codes");

    spit(dir / "empty.csv", "");
    auto o = invoke({"fit", "-i", (dir / "empty.csv").string(), "-o", dir.string()});
    CHECK(o.code == 2);
    CHECK(o.err.find("no data rows") != std::string::npos);

    spit(dir / "header_only.csv", "period,demand\n");
    o = invoke({"fit", "-i", (dir / "header_only.csv").string(), "-o", dir.string()});
    CHECK(o.code == 2);
    CHECK(o.err.find("no data rows") != std::string::npos);

    spit(dir / "bad.csv", "period,demand\n1,4\n2,abc\n");
    o = invoke({"fit", "-i", (dir / "bad.csv").string(), "-o", dir.string()});
    CHECK(o.code == 2);
    CHECK(o.err.find("line 3") != std::string::npos);
    CHECK(o.err.find("bad.csv") != std::string::npos);

    CHECK(invoke({"fit", "--bogus"}).code == 2);
    CHECK(invoke({"evaluate", "-i", (dir / "bad.csv").string(), "--variant", "eq9"}).code == 2);

    spit(dir / "short.csv", "period,demand\n1,4\n2,5\n3,6\n");
    o = invoke({"fit", "-i", (dir / "short.csv").string(), "-o", dir.string()});
    CHECK(o.code == 3);
    CHECK(o.err.find("insufficient_data") != std::string::npos);

    spit(dir / "zeros.csv", "period,demand\n1,0\n2,0\n3,0\n4,0\n5,0\n");
    CHECK(invoke({"fit", "-i", (dir / "zeros.csv").string(), "-o", dir.string()}).code == 3);

    o = invoke({"fit", "-i", (dir / "missing.csv").string(), "-o", dir.string()});
    CHECK(o.code == 4);

    spit(dir / "ok.csv", "period,demand\n1,1\n2,4\n3,9\n4,7\n5,3\n6,2\n");
    spit(dir / "blocker", "not a directory");
    o = invoke({"fit", "-i", (dir / "ok.csv").string(), "-o", (dir / "blocker" / "sub").string()});
    CHECK(o.code == 4);

    spit(dir / "one.csv", "period,demand\n1,3\n");
    o = invoke({"plot", "-i", (dir / "one.csv").string(), "-o", dir.string()});
    CHECK(o.code == 2);
    CHECK(o.err.find("more data") != std::string::npos);
}

TEST_CASE("published SSE pairs through the diagnostic flag", "[cli]") {
    const auto o = invoke({"evaluate", "--sse-pair", "22061.11,14041.68", "--sse-pair", "179525.74,37197.51",
                           "--sse-pair", "301500362.4,180145992.2"});
    REQUIRE(o.code == 0);
    std::istringstream lines(o.out);
    std::vector<double> got;
    for (std::string line; std::getline(lines, line);) got.push_back(json::parse(line)["improvement_percent"]);
    REQUIRE(got.size() == 3);
    CHECK_THAT(got[0], WithinAbs(36.35, 0.05));
    CHECK_THAT(got[1], WithinAbs(79.3, 0.05));
    CHECK_THAT(got[2], WithinAbs(40.25, 0.05));

    CHECK(invoke({"evaluate", "--sse-pair", "0,5"}).code == 3);
    CHECK(invoke({"evaluate", "--sse-pair", "12"}).code == 2);
}

TEST_CASE("evaluate on the synthetic default reports an improvement", "[cli]") {
    const auto dir = scratch("evaluate");
    const auto csv = dir / "synth.csv";
    REQUIRE(invoke({"synth", "--out", csv.string()}).code == 0);
    REQUIRE(invoke({"evaluate", "-i", csv.string(), "-o", dir.string(), "--mode", "both"}).code == 0);

    const auto text = slurp(dir / "report.json");
    CHECK(bassdiff::validate_report_json(text).empty());
    const auto j = json::parse(text);
    REQUIRE(j["reports"].size() == 2);
    CHECK(j["reports"][0]["mode"] == "simulated");
    CHECK(j["reports"][1]["mode"] == "one_step");
    CHECK(j["reports"][0]["improvement_percent"].get<double>() > 0.0);

    const auto pred = slurp(dir / "predictions.csv");
    CHECK(pred.rfind("period,actual,classical,modified\n", 0) == 0);
    CHECK(std::count(pred.begin(), pred.end(), '\n') == 229);
    CHECK(fs::exists(dir / "predictions_one_step.csv"));
}

TEST_CASE("plot writes three polylines over the series", "[cli]") {
    const auto dir = scratch("plot");
    const auto csv = dir / "synth.csv";
    REQUIRE(invoke({"synth", "--n", "60", "--peak-time", "12", "--out", csv.string()}).code == 0);
    REQUIRE(invoke({"plot", "-i", csv.string(), "-o", dir.string()}).code == 0);

    std::ifstream in(dir / "compare.svg");
    boost::property_tree::ptree tree;
    REQUIRE_NOTHROW(boost::property_tree::read_xml(in, tree));
    int polylines = 0;
    for (const auto& [name, child] : tree.get_child("svg")) {
        if (name != "polyline") continue;
        ++polylines;
        std::istringstream pts(child.get<std::string>("<xmlattr>.points"));
        std::string pair;
        int count = 0;
        while (pts >> pair) ++count;
        CHECK(count == 60);
    }
    CHECK(polylines == 3);
}

TEST_CASE("synth is byte-stable and writes a spec sidecar", "[cli]") {
    const auto dir = scratch("synth");
    REQUIRE(invoke({"synth", "--seed", "42", "--peak-height", "80", "--out", (dir / "a.csv").string()}).code == 0);
    REQUIRE(invoke({"synth", "--seed", "42", "--peak-height", "80", "--out", (dir / "b.csv").string()}).code == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

    const auto spec = json::parse(slurp(dir / "a.spec.json"));
    CHECK(spec["seed"] == 42);
    CHECK(spec["peak_height"].get<double>() == 80.0);
    CHECK(spec["n"] == 228);
    CHECK(spec["prng"] == "splitmix64");

    CHECK(invoke({"fit", "-i", (dir / "a.csv").string(), "-o", dir.string()}).code == 0);
    CHECK(invoke({"synth", "--peak-time", "0", "--out", (dir / "c.csv").string()}).code == 2);
}

TEST_CASE("forecast extends past the sample", "[cli]") {
    const auto dir = scratch("forecast");
    const auto csv = dir / "synth.csv";
    REQUIRE(invoke({"synth", "--out", csv.string()}).code == 0);
    REQUIRE(invoke({"forecast", "-i", csv.string(), "-o", dir.string(), "--horizon", "12", "--clamp"}).code == 0);
    const auto j = json::parse(slurp(dir / "forecast.json"));
    CHECK(j["predicted"].size() == 240);
    CHECK(j["variant_used"] != "auto");
    const auto table = slurp(dir / "forecast.csv");
    CHECK(table.find("\n2023-12,,") != std::string::npos);
}

TEST_CASE("trends input through the CLI", "[cli]") {
    const auto dir = scratch("trends");
    const std::string fixture = std::string(BASSDIFF_TEST_DATA_DIR) + "/trends_monthly_228.csv";
    REQUIRE(invoke({"evaluate", "-i", fixture, "--format", "trends", "--less-than-one", "as_zero", "-o",
                    dir.string()})
                .code == 0);
    const auto j = json::parse(slurp(dir / "report.json"));
    CHECK(j["n_obs"] == 228);
    CHECK(j["unit"].get<std::string>().find("Viber") != std::string::npos);
}

TEST_CASE("batch gives every input its own directory", "[cli]") {
    const auto dir = scratch("batch");
    fs::create_directories(dir / "x");
    fs::create_directories(dir / "y");
    REQUIRE(invoke({"synth", "--seed", "1", "--out", (dir / "x" / "s.csv").string()}).code == 0);
    REQUIRE(invoke({"synth", "--seed", "2", "--out", (dir / "y" / "s.csv").string()}).code == 0);
    REQUIRE(invoke({"synth", "--seed", "3", "--out", (dir / "t.csv").string()}).code == 0);

    const auto out = dir / "out";
    const auto o = invoke({"batch", "-j", "3", "-o", out.string(), (dir / "x" / "s.csv").string(),
                           (dir / "y" / "s.csv").string(), (dir / "t.csv").string()});
    REQUIRE(o.code == 0);
    for (const char* sub : {"s", "s_2", "t"}) {
        CHECK(fs::exists(out / sub / "report.json"));
        CHECK(fs::exists(out / sub / "compare.svg"));
    }
    CHECK(slurp(out / "s" / "report.json") != slurp(out / "s_2" / "report.json"));

    // serial run yields the same files
    const auto serial = dir / "serial";
    REQUIRE(invoke({"batch", "-j", "1", "-o", serial.string(), (dir / "x" / "s.csv").string(),
                    (dir / "y" / "s.csv").string(), (dir / "t.csv").string()})
                .code == 0);
    CHECK(slurp(out / "t" / "compare.svg") == slurp(serial / "t" / "compare.svg"));

    spit(dir / "broken.csv", "period,demand\n1,x\n");
    CHECK(invoke({"batch", "-o", out.string(), (dir / "t.csv").string(), (dir / "broken.csv").string()}).code == 2);
}
