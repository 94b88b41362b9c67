#pragma once

#include <span>
#include <vector>

namespace permcorr {

double normal_cdf(double z);

// Inverse of normal_cdf on (0, 1). Acklam's rational approximation refined
// with one Halley step; absolute error below 1e-14 over the open interval.
double normal_quantile(double p);

struct SummaryMoments {
    double mean = 0.0;
    double variance = 0.0;        // population (divide by n)
    double skewness = 0.0;        // NaN when variance is 0
    double excess_kurtosis = 0.0; // NaN when variance is 0
};

SummaryMoments summarize(std::span<const double> values);

// Sup distance between the empirical CDF of `values` and the standard
// normal CDF. Sorts a copy.
double ks_distance_to_standard_normal(std::vector<double> values);

// Rounds to `digits` significant decimal digits; reports print at 12.
double round_sig(double x, int digits);

} // namespace permcorr
