#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "permcorr/matrix.hpp"
#include "permcorr/moments.hpp"

namespace permcorr {

struct RngSeed {
    std::uint64_t value = 0;
};

enum class DistributionKind { Exact, Empirical };

inline constexpr int kDefaultEnumerationCap = 8;
inline constexpr int kMaxEnumerationCap = 9;

// The permutation null law of Gamma: either every one of the N! outcomes
// (exact) or a seeded Monte Carlo sample (empirical). Immutable once built.
struct NullDistribution {
    DistributionKind kind = DistributionKind::Empirical;
    std::vector<double> values;
    int n = 0;
    std::int64_t sample_count = 0;
    std::optional<std::uint64_t> seed; // empirical only
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;         // NaN when degenerate
    double excess_kurtosis = 0.0;  // NaN when degenerate
};

// Gamma over all N! permutations, in lexicographic permutation order.
NullDistribution enumerate_exact(const CoefficientMatrix& a, const CoefficientMatrix& b,
                                 int cap = kDefaultEnumerationCap);

// Mean of Gamma^order over all N! permutations, without storing the values.
double exact_moment(const CoefficientMatrix& a, const CoefficientMatrix& b, int order,
                    int cap = kDefaultEnumerationCap);

// `draws` uniform permutations via Fisher-Yates on counter-based streams:
// draw t depends only on (seed, t), so the result is identical for any
// worker count.
NullDistribution sample_null(const CoefficientMatrix& a, const CoefficientMatrix& b,
                             std::int64_t draws, RngSeed seed, int workers = 1);

// One-sample Kolmogorov-Smirnov distance between the standardized values
// (per `standardize` with the given kind) and the standard normal CDF.
double ks_normal(const NullDistribution& dist, const CoefficientMatrix& a,
                 const CoefficientMatrix& b, NormalizerKind kind);

enum class Sidedness { Greater, Less, TwoSided };

const char* to_string(Sidedness s);

// Permutation p-value. Empirical distributions use the +1 correction
// (never 0); exact distributions use plain proportions. Ties count in both
// tails, so greater + less >= 1.
double p_value(const NullDistribution& dist, double gamma_obs, Sidedness sidedness);

} // namespace permcorr
