#include "app.hpp"

#include <bassdiff/csv.hpp>
#include <bassdiff/error.hpp>
#include <bassdiff/evaluate.hpp>
#include <bassdiff/fit.hpp>
#include <bassdiff/report.hpp>
#include <bassdiff/svg_plot.hpp>
#include <bassdiff/synthetic.hpp>
#include <bassdiff/tail.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace bassdiff::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path.string() + "'");
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

int exit_code_for(const Error& e) {
    switch (e.family()) {
        case ErrorFamily::Input: return kInputError;
        case ErrorFamily::Numeric: return kNumericError;
        case ErrorFamily::Io: return kIoError;
    }
    return kNumericError;
}

ColumnSelector to_selector(const std::string& text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return static_cast<std::size_t>(std::stoul(text));
    }
    return text;
}

TimeSeries load_series(const fs::path& path, const RunManifest& m) {
    const std::string text = read_file(path);
    try {
        IngestOptions opts;
        opts.less_than_one_policy = m.less_than_one;
        opts.date_column = to_selector(m.date_column);
        opts.value_column = to_selector(m.value_column);
        switch (m.format) {
            case InputFormat::Trends: return parse_google_trends_csv(text, opts);
            case InputFormat::Generic: return parse_generic_csv(text, opts);
            case InputFormat::Transactions: return aggregate_transactions(parse_transaction_log(text));
        }
    } catch (const Error& e) {
        throw Error(e.code(), path.filename().string() + ": " + e.what());
    }
    throw Error(ErrorCode::Parameter, "unknown input format");
}

const fs::path& single_input(const RunManifest& m) {
    if (m.inputs.size() != 1) {
        throw Error(ErrorCode::Parameter, "expected exactly one --input file, got " + std::to_string(m.inputs.size()));
    }
    return m.inputs.front();
}

struct Evaluation {
    TimeSeries series;
    QuadraticCoefficients coeffs;
    TailProfile tail;
    std::vector<EvaluationReport> reports;
};

Evaluation evaluate_series(TimeSeries series, const RunManifest& m) {
    auto coeffs = fit_quadratic(series);
    auto tail = profile(series, TailOptions{m.height_fraction, m.tail_slope});
    std::vector<EvaluationReport> reports;
    for (auto mode : m.modes) {
        CompareOptions opts;
        opts.mode = mode;
        opts.variant = m.variant;
        opts.clamp_nonnegative = m.clamp_nonnegative;
        reports.push_back(compare_models(series, coeffs, tail, opts));
    }
    return Evaluation{std::move(series), coeffs, tail, std::move(reports)};
}

std::string predictions_csv(const TimeSeries& series, const EvaluationReport& r) {
    std::string out = "period,actual,classical,modified\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        out += csv::escape_field(series.periods()[t]) + ',' + csv::format_number(series.demands()[t]) + ',' +
               csv::format_number(r.predicted_classical[t]) + ',' + csv::format_number(r.predicted_modified[t]) + '\n';
    }
    return out;
}

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string render_comparison(const std::string& title, const TimeSeries& series, const EvaluationReport& r) {
    ComparePlot plot;
    plot.title = title;
    plot.y_label = series.unit().empty() ? "Demand" : series.unit();
    plot.periods = series.periods();
    plot.lines.push_back({"Actual", series.demands(), LineStyle::Solid, "#222222"});
    plot.lines.push_back({"Classical Bass", r.predicted_classical, LineStyle::Dashed, "#1f77b4"});
    plot.lines.push_back({"Modified (" + std::string(to_string(r.variant_used)) + ")", r.predicted_modified,
                          LineStyle::DashDot, "#d62728"});
    const auto& t = r.tail_profile;
    plot.caption.push_back("Mode: " + std::string(to_string(r.mode)) + "   SSE classical: " +
                           fixed2(r.sse_classical) + "   SSE modified: " + fixed2(r.sse_modified) +
                           "   Improvement: " + (std::isnan(r.improvement_percent) ? std::string("n/a")
                                                                                   : fixed2(r.improvement_percent) + "%"));
    plot.caption.push_back("Peak at " + series.periods()[t.peak_index] + "   tail_per: " + fixed2(t.tail_per) +
                           "   r1: " + fixed2(t.r1) + "   r2: " + fixed2(t.r2) +
                           "   correction: " + fixed2(r.correction_term));
    return render_svg(plot);
}

EvaluationDocument make_document(const fs::path& input, const Evaluation& ev) {
    return EvaluationDocument{input.filename().string(), ev.series.unit(), ev.coeffs, ev.reports};
}

void write_evaluation(const fs::path& input, const Evaluation& ev, const fs::path& dir) {
    write_file(dir / "report.json", document_to_json(make_document(input, ev)));
    write_file(dir / "predictions.csv", predictions_csv(ev.series, ev.reports.front()));
    for (std::size_t i = 1; i < ev.reports.size(); ++i) {
        write_file(dir / ("predictions_" + std::string(to_string(ev.reports[i].mode)) + ".csv"),
                   predictions_csv(ev.series, ev.reports[i]));
    }
}

// ---- subcommands -----------------------------------------------------------

int cmd_fit(const RunManifest& m, std::ostream& out) {
    const auto& input = single_input(m);
    const auto series = load_series(input, m);
    const auto coeffs = fit_quadratic(series);
    write_file(m.out_dir / "fit.json", fit_to_json(coeffs));
    out << "fit: a=" << csv::format_number(coeffs.a) << " b=" << csv::format_number(coeffs.b)
        << " c=" << csv::format_number(coeffs.c) << " sse=" << csv::format_number(coeffs.residual_sse) << '\n';
    return kOk;
}

int cmd_forecast(const RunManifest& m, std::ostream& out) {
    const auto& input = single_input(m);
    const auto series = load_series(input, m);
    const auto coeffs = fit_quadratic(series);
    const auto tail = profile(series, TailOptions{m.height_fraction, m.tail_slope});
    ForecastConfig config;
    config.mode = m.modes.front();
    config.horizon = m.horizon;
    config.clamp_nonnegative = m.clamp_nonnegative;
    config.variant = m.variant;
    const auto result = forecast(series, coeffs, tail, config);
    const auto labels = forecast_periods(series, m.horizon);

    std::string table = "period,actual,predicted\n";
    for (std::size_t t = 0; t < result.predicted.size(); ++t) {
        table += csv::escape_field(labels[t]) + ',' +
                 (t < series.size() ? csv::format_number(series.demands()[t]) : std::string()) + ',' +
                 csv::format_number(result.predicted[t]) + '\n';
    }
    write_file(m.out_dir / "forecast.csv", table);

    nlohmann::ordered_json j;
    j["source"] = input.filename().string();
    j["mode"] = std::string(to_string(config.mode));
    j["horizon"] = config.horizon;
    j["clamp_nonnegative"] = config.clamp_nonnegative;
    j["variant_requested"] = std::string(to_string(config.variant));
    j["variant_used"] = std::string(to_string(result.variant_used));
    j["correction_term"] = result.correction_term;
    j["predicted"] = result.predicted;
    write_file(m.out_dir / "forecast.json", j.dump(2) + "\n");
    out << "forecast: " << result.predicted.size() << " periods, variant " << to_string(result.variant_used) << '\n';
    return kOk;
}

int cmd_sse_pairs(const std::vector<std::string>& pairs, std::ostream& out) {
    for (const auto& pair : pairs) {
        const auto comma = pair.find(',');
        double base = 0.0;
        double mod = 0.0;
        if (comma == std::string::npos || !csv::parse_number(std::string_view(pair).substr(0, comma), base) ||
            !csv::parse_number(std::string_view(pair).substr(comma + 1), mod)) {
            throw Error(ErrorCode::Parameter, "--sse-pair expects CLASSICAL,MODIFIED, got '" + pair + "'");
        }
        nlohmann::ordered_json j;
        j["sse_classical"] = base;
        j["sse_modified"] = mod;
        j["improvement_percent"] = improvement_percent(base, mod);
        out << j.dump() << '\n';
    }
    return kOk;
}

int cmd_evaluate(const RunManifest& m, std::ostream& out) {
    const auto& input = single_input(m);
    const auto ev = evaluate_series(load_series(input, m), m);
    write_evaluation(input, ev, m.out_dir);
    for (const auto& r : ev.reports) {
        out << "evaluate[" << to_string(r.mode) << "]: sse_classical=" << csv::format_number(r.sse_classical)
            << " sse_modified=" << csv::format_number(r.sse_modified) << " variant=" << to_string(r.variant_used)
            << " improvement=" << csv::format_number(r.improvement_percent) << "%\n";
    }
    return kOk;
}

void plot_to(const fs::path& input, const Evaluation& ev, const fs::path& dir) {
    write_file(dir / "compare.svg",
               render_comparison(input.filename().string(), ev.series, ev.reports.front()));
}

int cmd_plot(const RunManifest& m, std::ostream& out) {
    const auto& input = single_input(m);
    auto series = load_series(input, m);
    if (series.size() < 2) {
        throw Error(ErrorCode::DegeneratePlot, input.filename().string() + ": a plot needs at least 2 periods, got " +
                                                   std::to_string(series.size()) + "; supply more data");
    }
    const auto ev = evaluate_series(std::move(series), m);
    plot_to(input, ev, m.out_dir);
    out << "plot: wrote " << (m.out_dir / "compare.svg").string() << '\n';
    return kOk;
}

struct SynthFlags {
    std::string kind = "mono-peak";
    MonoPeakSpec spec;
    double a = 10.0;
    double b = 0.5;
    double c = -0.001;
    fs::path out = "synth.csv";
};

int cmd_synth(const SynthFlags& f, std::ostream& out) {
    nlohmann::ordered_json sidecar;
    sidecar["kind"] = f.kind;
    TimeSeries series = [&] {
        if (f.kind == "bass") {
            QuadraticCoefficients coeffs;
            coeffs.a = f.a;
            coeffs.b = f.b;
            coeffs.c = f.c;
            sidecar["a"] = f.a;
            sidecar["b"] = f.b;
            sidecar["c"] = f.c;
            sidecar["n"] = f.spec.n;
            sidecar["start_period"] = f.spec.start_period;
            return generate_bass_series(coeffs, f.spec.n, f.spec.start_period);
        }
        if (f.kind != "mono-peak") {
            throw Error(ErrorCode::Parameter, "unknown --kind '" + f.kind + "' (expected mono-peak or bass)");
        }
        const auto& s = f.spec;
        sidecar["n"] = s.n;
        sidecar["peak_time"] = s.peak_time;
        sidecar["peak_height"] = s.peak_height;
        sidecar["decay_rate"] = s.decay_rate;
        sidecar["plateau_level"] = s.plateau_level;
        sidecar["rise_shape"] = s.rise_shape;
        sidecar["noise_amplitude"] = s.noise_amplitude;
        sidecar["seed"] = s.seed;
        sidecar["start_period"] = s.start_period;
        sidecar["prng"] = "splitmix64";
        return generate_mono_peak(s);
    }();

    std::string table = "period,demand\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        table += csv::escape_field(series.periods()[t]) + ',' + csv::format_number(series.demands()[t]) + '\n';
    }
    write_file(f.out, table);
    fs::path spec_path = f.out;
    spec_path.replace_extension(".spec.json");
    write_file(spec_path, sidecar.dump(2) + "\n");
    out << "synth: wrote " << series.size() << " periods to " << f.out.string() << '\n';
    return kOk;
}

int cmd_batch(const RunManifest& m, unsigned jobs, std::ostream& out, std::ostream& err) {
    if (m.inputs.empty()) throw Error(ErrorCode::Parameter, "batch needs at least one input file");

    // one output directory per input, disjoint even when stems collide
    std::vector<fs::path> dirs;
    std::map<std::string, int> seen;
    for (const auto& input : m.inputs) {
        std::string stem = input.stem().string();
        const int k = seen[stem]++;
        if (k > 0) stem += "_" + std::to_string(k + 1);
        dirs.push_back(m.out_dir / stem);
    }

    std::vector<int> codes(m.inputs.size(), kOk);
    std::vector<std::string> messages(m.inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < m.inputs.size(); i = next++) {
            try {
                const auto ev = evaluate_series(load_series(m.inputs[i], m), m);
                write_evaluation(m.inputs[i], ev, dirs[i]);
                if (ev.series.size() >= 2) plot_to(m.inputs[i], ev, dirs[i]);
                std::ostringstream line;
                line << "ok " << m.inputs[i].string() << " -> " << dirs[i].string()
                     << " improvement=" << csv::format_number(ev.reports.front().improvement_percent) << "%";
                messages[i] = line.str();
            } catch (const Error& e) {
                codes[i] = exit_code_for(e);
                messages[i] = "error " + m.inputs[i].string() + ": " + e.what();
            } catch (const std::exception& e) {
                codes[i] = kNumericError;
                messages[i] = "error " + m.inputs[i].string() + ": " + e.what();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(m.inputs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int worst = kOk;
    for (std::size_t i = 0; i < m.inputs.size(); ++i) {
        (codes[i] == kOk ? out : err) << messages[i] << '\n';
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

// ---- flag wiring -----------------------------------------------------------

void add_input_flags(CLI::App* sub, RunManifest& m, std::string& format, std::string& policy) {
    sub->add_option("-i,--input", m.inputs, "Input CSV file")->required();
    sub->add_option("--format", format, "Input format: trends | generic | transactions")
        ->check(CLI::IsMember({"trends", "generic", "transactions"}))
        ->capture_default_str();
    sub->add_option("--date-column", m.date_column, "Period column (generic CSV): name or 0-based index")
        ->capture_default_str();
    sub->add_option("--value-column", m.value_column, "Demand column (generic CSV): name or 0-based index")
        ->capture_default_str();
    sub->add_option("--less-than-one", policy, "Google Trends '<1' handling: as_half | as_zero | as_one")
        ->check(CLI::IsMember({"as_half", "as_zero", "as_one"}))
        ->capture_default_str();
    sub->add_option("-o,--out-dir", m.out_dir, "Output directory")->capture_default_str();
}

void add_model_flags(CLI::App* sub, RunManifest& m, std::string& variant, std::string& mode, bool allow_both) {
    sub->add_option("--variant", variant, "classical | modified_add | modified_subtract | auto")
        ->check(CLI::IsMember({"classical", "modified_add", "modified_subtract", "auto"}))
        ->capture_default_str();
    std::vector<std::string> modes{"simulated", "one_step"};
    if (allow_both) modes.push_back("both");
    sub->add_option("--mode", mode, allow_both ? "simulated | one_step | both" : "simulated | one_step")
        ->check(CLI::IsMember(modes))
        ->capture_default_str();
    sub->add_option("--height-fraction", m.height_fraction, "Tail threshold as a fraction of curve height")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sub->add_option("--tail-slope", m.tail_slope, "Slope applied to (tail_per - 0.5) in r1/r2")
        ->capture_default_str();
    sub->add_flag("--clamp", m.clamp_nonnegative, "Clamp predictions at zero");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bass diffusion forecasting with tail-corrected mono-peak variants", "bassdiff"};
    app.require_subcommand(1);

    RunManifest m;
    std::string format = "generic";
    std::string policy = "as_half";
    std::string variant = "auto";
    std::string mode = "simulated";
    std::vector<std::string> sse_pairs;
    unsigned jobs = 1;
    SynthFlags synth;

    auto* fit = app.add_subcommand("fit", "Fit the quadratic Bass recursion and write fit.json");
    add_input_flags(fit, m, format, policy);

    auto* fc = app.add_subcommand("forecast", "Write forecast.csv and forecast.json");
    add_input_flags(fc, m, format, policy);
    add_model_flags(fc, m, variant, mode, false);
    fc->add_option("--horizon", m.horizon, "Periods to forecast beyond the data")->capture_default_str();

    auto* ev = app.add_subcommand("evaluate", "Compare classical and modified models; write report.json and predictions.csv");
    ev->add_option("-i,--input", m.inputs, "Input CSV file");
    ev->add_option("--format", format, "Input format: trends | generic | transactions")
        ->check(CLI::IsMember({"trends", "generic", "transactions"}))
        ->capture_default_str();
    ev->add_option("--date-column", m.date_column, "Period column (generic CSV)")->capture_default_str();
    ev->add_option("--value-column", m.value_column, "Demand column (generic CSV)")->capture_default_str();
    ev->add_option("--less-than-one", policy, "Google Trends '<1' handling")
        ->check(CLI::IsMember({"as_half", "as_zero", "as_one"}))
        ->capture_default_str();
    ev->add_option("-o,--out-dir", m.out_dir, "Output directory")->capture_default_str();
    add_model_flags(ev, m, variant, mode, true);
    ev->add_option("--sse-pair", sse_pairs,
                   "CLASSICAL,MODIFIED SSE values; prints the improvement percentage and skips the pipeline");

    auto* pl = app.add_subcommand("plot", "Write compare.svg (actual vs classical vs modified)");
    add_input_flags(pl, m, format, policy);
    add_model_flags(pl, m, variant, mode, false);

    auto* sy = app.add_subcommand("synth", "Generate a synthetic fixture CSV and its spec sidecar");
    sy->add_option("--kind", synth.kind, "mono-peak | bass")->capture_default_str();
    sy->add_option("--n", synth.spec.n, "Number of periods")->capture_default_str();
    sy->add_option("--peak-time", synth.spec.peak_time, "Peak index")->capture_default_str();
    sy->add_option("--peak-height", synth.spec.peak_height, "Peak height")->capture_default_str();
    sy->add_option("--decay-rate", synth.spec.decay_rate, "Post-peak exponential decay rate")->capture_default_str();
    sy->add_option("--plateau", synth.spec.plateau_level, "Tail plateau level")->capture_default_str();
    sy->add_option("--rise-shape", synth.spec.rise_shape, "Pre-peak power exponent")->capture_default_str();
    sy->add_option("--noise", synth.spec.noise_amplitude, "Uniform noise amplitude")->capture_default_str();
    sy->add_option("--seed", synth.spec.seed, "SplitMix64 seed")->capture_default_str();
    sy->add_option("--start", synth.spec.start_period, "First period, YYYY-MM")->capture_default_str();
    sy->add_option("--a", synth.a, "Bass recursion intercept (kind=bass)")->capture_default_str();
    sy->add_option("--b", synth.b, "Bass recursion linear term (kind=bass)")->capture_default_str();
    sy->add_option("--c", synth.c, "Bass recursion quadratic term (kind=bass)")->capture_default_str();
    sy->add_option("--out", synth.out, "Output CSV path")->capture_default_str();

    auto* ba = app.add_subcommand("batch", "Evaluate and plot many inputs, one output directory each");
    ba->add_option("inputs", m.inputs, "Input CSV files")->required();
    ba->add_option("--format", format, "Input format: trends | generic | transactions")
        ->check(CLI::IsMember({"trends", "generic", "transactions"}))
        ->capture_default_str();
    ba->add_option("--date-column", m.date_column, "Period column (generic CSV)")->capture_default_str();
    ba->add_option("--value-column", m.value_column, "Demand column (generic CSV)")->capture_default_str();
    ba->add_option("--less-than-one", policy, "Google Trends '<1' handling")
        ->check(CLI::IsMember({"as_half", "as_zero", "as_one"}))
        ->capture_default_str();
    ba->add_option("-o,--out-dir", m.out_dir, "Output root directory")->capture_default_str();
    ba->add_option("-j,--jobs", jobs, "Files evaluated concurrently")->check(CLI::PositiveNumber)->capture_default_str();
    add_model_flags(ba, m, variant, mode, true);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        m.format = format == "trends" ? InputFormat::Trends
                   : format == "transactions" ? InputFormat::Transactions
                                              : InputFormat::Generic;
        m.less_than_one = parse_less_than_one_policy(policy);
        m.variant = parse_variant(variant);
        if (mode == "both") {
            m.modes = {ForecastMode::Simulated, ForecastMode::OneStep};
        } else {
            m.modes = {parse_mode(mode)};
        }
        if (!(m.height_fraction > 0.0 && m.height_fraction < 1.0)) {
            throw Error(ErrorCode::Parameter, "--height-fraction must lie strictly between 0 and 1");
        }

        if (*fit) return cmd_fit(m, out);
        if (*fc) return cmd_forecast(m, out);
        if (*ev) return sse_pairs.empty() ? cmd_evaluate(m, out) : cmd_sse_pairs(sse_pairs, out);
        if (*pl) return cmd_plot(m, out);
        if (*sy) return cmd_synth(synth, out);
        if (*ba) return cmd_batch(m, jobs, out, err);
    } catch (const Error& e) {
        err << "bassdiff: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "bassdiff: io: " << e.what() << '\n';
        return kIoError;
    }
    return kInputError;
}

} // namespace bassdiff::cli
