#include "permcorr/stats_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace permcorr {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {

// Acklam's coefficients for the initial rational approximation.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

double acklam_initial(double p) {
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    }
    double x = acklam_initial(p);
    // One Halley step against the exact CDF.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

SummaryMoments summarize(std::span<const double> values) {
    SummaryMoments s;
    const auto n = static_cast<double>(values.size());
    if (values.empty()) {
        return s;
    }
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.variance = m2;
    if (m2 > 0.0) {
        s.skewness = m3 / (m2 * std::sqrt(m2));
        s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    } else {
        s.skewness = std::numeric_limits<double>::quiet_NaN();
        s.excess_kurtosis = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

double ks_distance_to_standard_normal(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("ks distance of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const auto m = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = normal_cdf(values[i]);
        d = std::max(d, f - static_cast<double>(i) / m);
        d = std::max(d, static_cast<double>(i + 1) / m - f);
    }
    return d;
}

double round_sig(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) {
        return x;
    }
    const double exponent = std::floor(std::log10(std::fabs(x)));
    const double scale = std::pow(10.0, digits - 1 - exponent);
    return std::round(x * scale) / scale;
}

} // namespace permcorr
