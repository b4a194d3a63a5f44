#pragma once

#include <bassdiff/forecast.hpp>
#include <bassdiff/ingest.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bassdiff::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kNumericError = 3,
    kIoError = 4,
};

enum class InputFormat { Trends, Generic, Transactions };

struct RunManifest {
    std::vector<std::filesystem::path> inputs;
    InputFormat format = InputFormat::Generic;
    std::string date_column = "0";
    std::string value_column = "1";
    LessThanOnePolicy less_than_one = LessThanOnePolicy::AsHalf;
    ModelVariant variant = ModelVariant::Auto;
    std::vector<ForecastMode> modes{ForecastMode::Simulated};
    std::size_t horizon = 0;
    bool clamp_nonnegative = false;
    double height_fraction = 0.5;
    double tail_slope = 1.6;
    std::filesystem::path out_dir = ".";
};

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bassdiff::cli
