#include <catch2/catch_amalgamated.hpp>

#include <bassdiff/error.hpp>
#include <bassdiff/fit.hpp>
#include <bassdiff/forecast.hpp>
#include <bassdiff/synthetic.hpp>
#include <bassdiff/tail.hpp>

#include <cmath>

using namespace bassdiff;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

QuadraticCoefficients coeffs(double a, double b, double c) {
    QuadraticCoefficients q;
    q.a = a;
    q.b = b;
    q.c = c;
    return q;
}

} // namespace

TEST_CASE("SplitMix64 reference output", "[synthetic]") {
    // first outputs for seed 1234567, as published with the algorithm
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);

    SplitMix64 u(42);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform01();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
    }
}

TEST_CASE("Bass recursion series", "[synthetic]") {
    // d1 = 10; d2 = 10 + 0.5*10 - 0.001*100 = 14.9; D = 24.9;
    // d3 = 10 + 12.45 - 0.001*620.01 = 21.82999
    const auto s = generate_bass_series(coeffs(10, 0.5, -0.001), 3);
    REQUIRE(s.size() == 3);
    CHECK(s.demands()[0] == 10.0);
    CHECK_THAT(s.demands()[1], WithinAbs(14.9, 1e-12));
    CHECK_THAT(s.demands()[2], WithinAbs(21.82999, 1e-12));
    CHECK(s.periods().front() == "2004-01");

    const auto flat = generate_bass_series(coeffs(5, 0, 0), 4);
    CHECK(flat.demands() == std::vector<double>{5, 5, 5, 5});

    CHECK_THROWS_AS(generate_bass_series(coeffs(1, 2, 0.5), 100), Error);
    CHECK_THROWS_AS(generate_bass_series(coeffs(1, 0, 0), 0), Error);
}

TEST_CASE("generated recursion refits and re-simulates", "[synthetic][property]") {
    const auto s = generate_bass_series(coeffs(10, 0.5, -0.001), 30);
    const auto fit = fit_quadratic(s);
    CHECK_THAT(fit.a, WithinRel(10.0, 1e-6));
    CHECK_THAT(fit.b, WithinRel(0.5, 1e-6));
    CHECK_THAT(fit.c, WithinRel(-0.001, 1e-6));

    ForecastConfig cfg;
    cfg.variant = ModelVariant::Classical;
    const auto sim = forecast(s, coeffs(10, 0.5, -0.001), profile(s), cfg);
    CHECK(sim.predicted == s.demands());
}

TEST_CASE("mono-peak shape", "[synthetic]") {
    MonoPeakSpec spec;
    spec.noise_amplitude = 0.0;
    const auto s = generate_mono_peak(spec);
    REQUIRE(s.size() == spec.n);
    CHECK(s.demands()[spec.peak_time] == spec.peak_height);
    CHECK(s.demands()[0] == 0.0);
    CHECK_THAT(s.demands().back(), WithinAbs(spec.plateau_level, 1e-3));
    CHECK(s.periods().front() == "2004-01");
    CHECK(s.periods().back() == "2022-12");

    spec.decay_rate = 2.0;
    const auto sharp = generate_mono_peak(spec);
    for (std::size_t t = spec.peak_time + 20; t < spec.n; ++t) {
        CHECK_THAT(sharp.demands()[t], WithinAbs(spec.plateau_level, 1e-12));
    }
}

TEST_CASE("mono-peak noise is seeded and bounded", "[synthetic][property]") {
    MonoPeakSpec spec;
    const auto a = generate_mono_peak(spec);
    const auto b = generate_mono_peak(spec);
    CHECK(a == b);
    spec.seed = 43;
    const auto c = generate_mono_peak(spec);
    CHECK(a.demands() != c.demands());

    MonoPeakSpec clean = spec;
    clean.noise_amplitude = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        spec.seed = seed;
        spec.plateau_level = 0.0;
        clean.plateau_level = 0.0;
        const auto noisy = generate_mono_peak(spec);
        const auto ref = generate_mono_peak(clean);
        for (std::size_t t = 0; t < spec.n; ++t) {
            REQUIRE(noisy.demands()[t] >= 0.0);
            REQUIRE(std::abs(noisy.demands()[t] - ref.demands()[t]) <= spec.noise_amplitude);
        }
    }
}

TEST_CASE("mono-peak spec validation", "[synthetic][error]") {
    auto rejects = [](auto mutate) {
        MonoPeakSpec spec;
        mutate(spec);
        try {
            generate_mono_peak(spec);
        } catch (const Error& e) {
            return e.code() == ErrorCode::Parameter;
        }
        return false;
    };
    CHECK(rejects([](MonoPeakSpec& s) { s.peak_time = 0; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.peak_time = s.n; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.decay_rate = 0.0; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.plateau_level = -1.0; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.plateau_level = s.peak_height; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.rise_shape = 0.0; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.noise_amplitude = -0.1; }));
    CHECK(rejects([](MonoPeakSpec& s) { s.start_period = "January"; }));
}

TEST_CASE("monthly labels roll over years", "[synthetic]") {
    CHECK(monthly_periods("2021-11", 4) == std::vector<std::string>{"2021-11", "2021-12", "2022-01", "2022-02"});
}
