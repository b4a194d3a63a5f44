#include <bassdiff/fit.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace bassdiff {

namespace {

constexpr const char* kColumnNames[3] = {"1", "D(t-1)", "D(t-1)^2"};

std::string collinear_columns(const Eigen::Vector3d& null_direction) {
    const double norm = null_direction.cwiseAbs().maxCoeff();
    std::string names;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(null_direction[i]) > 1e-3 * norm) {
            if (!names.empty()) names += ", ";
            names += kColumnNames[i];
        }
    }
    return names;
}

} // namespace

QuadraticCoefficients fit_quadratic(std::span<const double> demands) {
    const std::size_t n = demands.size();
    if (n < 4) {
        throw Error(ErrorCode::InsufficientData,
                    "quadratic fit needs at least 4 observations, got " + std::to_string(n));
    }
    const auto lagged = cumulative(demands).values;

    double centre = 0.0;
    for (double d : lagged) centre += d;
    centre /= static_cast<double>(n);
    double spread = 0.0;
    for (double d : lagged) spread = std::max(spread, std::abs(d - centre));
    if (spread == 0.0 || !std::isfinite(spread)) {
        throw Error(ErrorCode::SingularFit,
                    "cumulative demand is constant; columns 1, D(t-1), D(t-1)^2 are collinear");
    }

    Eigen::MatrixXd design(static_cast<Eigen::Index>(n), 3);
    Eigen::VectorXd target(static_cast<Eigen::Index>(n));
    for (std::size_t t = 0; t < n; ++t) {
        const double z = (lagged[t] - centre) / spread;
        const auto row = static_cast<Eigen::Index>(t);
        design(row, 0) = 1.0;
        design(row, 1) = z;
        design(row, 2) = z * z;
        target(row) = demands[t];
    }

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (!(sv(2) >= kSingularRatio * sv(0))) {
        throw Error(ErrorCode::SingularFit,
                    "design matrix is rank deficient (singular value ratio " +
                        std::to_string(sv(2) / sv(0)) + "); collinear columns: " +
                        collinear_columns(svd.matrixV().col(2)));
    }
    const Eigen::Vector3d scaled = svd.solve(target);

    // d = s0 + s1*z + s2*z^2 with z = (D - centre) / spread, expanded in D.
    const double inv = 1.0 / spread;
    QuadraticCoefficients out;
    out.c = scaled(2) * inv * inv;
    out.b = scaled(1) * inv - 2.0 * scaled(2) * centre * inv * inv;
    out.a = scaled(0) - scaled(1) * centre * inv + scaled(2) * centre * centre * inv * inv;

    // Terms that move no prediction by more than round-off are exact zeros.
    double d_max = 0.0;
    double y_max = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        d_max = std::max(d_max, std::abs(lagged[t]));
        y_max = std::max(y_max, std::abs(demands[t]));
    }
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * y_max;
    if (std::abs(out.c) * d_max * d_max <= noise) out.c = 0.0;
    if (std::abs(out.b) * d_max <= noise) out.b = 0.0;

    out.n_obs = n;
    out.residual_sse = recursion_sse(out, demands);
    return out;
}

QuadraticCoefficients fit_quadratic(const TimeSeries& series) { return fit_quadratic(series.values()); }

BassParameters derive_bass_parameters(const QuadraticCoefficients& coeffs) {
    const double a = coeffs.a;
    const double b = coeffs.b;
    const double c = coeffs.c;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        throw Error(ErrorCode::Parameter, "coefficients must be finite");
    }
    if (c >= 0.0) {
        throw Error(ErrorCode::NonDiffusionShape,
                    "quadratic coefficient c = " + std::to_string(c) + " is not negative");
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw Error(ErrorCode::NoRealMarketSize, "discriminant b^2 - 4ac is negative");
    }
    if (a <= 0.0) {
        throw Error(ErrorCode::NonDiffusionShape,
                    "intercept a = " + std::to_string(a) + " is not positive");
    }
    const double root = std::sqrt(disc);
    // Both forms give the positive root; pick the one without cancellation.
    const double m = b >= 0.0 ? (-b - root) / (2.0 * c) : (2.0 * a) / (root - b);
    return BassParameters{a / m, -c * m, m};
}

std::variant<BassParameters, Error> try_derive_bass_parameters(const QuadraticCoefficients& coeffs) {
    try {
        return derive_bass_parameters(coeffs);
    } catch (const Error& e) {
        return e;
    }
}

QuadraticCoefficients to_quadratic(const BassParameters& params) {
    QuadraticCoefficients out;
    out.a = params.p * params.m;
    out.b = params.q - params.p;
    out.c = -params.q / params.m;
    return out;
}

double recursion_sse(const QuadraticCoefficients& coeffs, std::span<const double> demands) {
    double cum = 0.0;
    double total = 0.0;
    for (double d : demands) {
        const double r = d - (coeffs.a + coeffs.b * cum + coeffs.c * cum * cum);
        total += r * r;
        cum += d;
    }
    return total;
}

} // namespace bassdiff
