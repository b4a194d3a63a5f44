#pragma once

#include <bassdiff/error.hpp>
#include <bassdiff/series.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <variant>

namespace bassdiff {

/// Coefficients of the discrete Bass recursion
///     d(t) = a + b * D(t-1) + c * D(t-1)^2
/// together with the least-squares diagnostics of the fit that produced them.
struct QuadraticCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double residual_sse = 0.0;
    std::size_t n_obs = 0;
};

/// Classical Bass parameters. Satisfy a = p*m, b = q - p, c = -q/m.
struct BassParameters {
    double p = 0.0;  // innovation
    double q = 0.0;  // imitation
    double m = 0.0;  // market potential, in cumulative-demand units
};

/// Ordinary least squares of demand on (1, D(t-1), D(t-1)^2).
///
/// The cumulative column is centred and scaled before an SVD solve and the
/// coefficients are mapped back to raw scale. Throws InsufficientData for
/// n < 4 and SingularFit when the smallest singular value of the scaled
/// design falls below 1e-10 of the largest; the message names the columns
/// involved in the near-dependency.
QuadraticCoefficients fit_quadratic(const TimeSeries& series);
QuadraticCoefficients fit_quadratic(std::span<const double> demands);

inline constexpr double kSingularRatio = 1e-10;

/// Market size m is the positive root of c*m^2 + b*m + a = 0; then
/// q = -c*m and p = a/m. Requires a > 0 and c < 0.
BassParameters derive_bass_parameters(const QuadraticCoefficients& coeffs);

// Non-throwing variant for reporting: holds the parameters or the reason
// they could not be derived.
std::variant<BassParameters, Error> try_derive_bass_parameters(const QuadraticCoefficients& coeffs);

// Inverse mapping (p, q, m) -> (a, b, c). residual_sse and n_obs are zero.
QuadraticCoefficients to_quadratic(const BassParameters& params);

// Sum of squared one-step residuals of the recursion on observed data.
double recursion_sse(const QuadraticCoefficients& coeffs, std::span<const double> demands);

} // namespace bassdiff
