#pragma once

#include <optional>
#include <vector>

#include "permcorr/matrix.hpp"

namespace permcorr {

enum class NormalizerKind { ExactSd, Daniels, Pham2, Pham3 };

const char* to_string(NormalizerKind k);

struct MomentReport {
    double mean = 0.0;
    std::optional<double> second_moment; // absent when no closed form applies
    std::optional<double> variance;
    double normalizer_daniels = 0.0;
    double normalizer_pham2 = 0.0;
    double normalizer_pham3 = 0.0;
    bool degenerate = false;
};

// E(Gamma) under the uniform permutation null; the general two-term form,
// valid for every symmetry class.
double exact_mean(const CoefficientMatrix& a, const CoefficientMatrix& b);

// E(Gamma^2) in closed form. Two exact routes cover the supported inputs:
// the seven-term expansion when both matrices are symmetric (diagonals
// allowed), and a nine-pattern expansion when both are hollow (any class;
// the arrangement counts are tracked per index pattern instead of lumped,
// which is what makes the antisymmetric case exact). Throws when neither
// route applies, i.e. a non-symmetric matrix with a nonzero diagonal.
double exact_second_moment(const CoefficientMatrix& a, const CoefficientMatrix& b);

// Degeneracy threshold: variances below this count as zero. Scales with the
// statistic's natural magnitude (N^2 a_max b_max)^2.
double variance_epsilon(const CoefficientMatrix& a, const CoefficientMatrix& b);

// second moment - mean^2, clamped at zero. *degenerate (optional out) is set
// when the variance falls below variance_epsilon.
double exact_variance(const CoefficientMatrix& a, const CoefficientMatrix& b,
                      bool* degenerate = nullptr);

double normalizer(const CoefficientMatrix& a, const CoefficientMatrix& b, NormalizerKind kind);

// ExactSd: (gamma_obs - E(Gamma)) / sd. Theorem normalizers divide raw
// gamma_obs, uncentered, as the theorems state them. Throws DegenerateError
// when the chosen denominator vanishes.
double standardize(double gamma_obs, const CoefficientMatrix& a, const CoefficientMatrix& b,
                   NormalizerKind kind);

// All closed-form moment quantities in one pass. second_moment/variance are
// absent when exact_second_moment has no route for the input pair.
MomentReport moment_report(const CoefficientMatrix& a, const CoefficientMatrix& b);

struct MomentScalingRow {
    int order = 0;
    double moment = 0.0; // exact p-th moment by full enumeration
    double scaled = 0.0; // moment / (N^{3p/2} a_max^p b_max^p)
};

// Exact moments of order 1..max_order by enumeration, with the scaling the
// order bounds are stated against. Requires N within the enumeration cap.
std::vector<MomentScalingRow> moment_scaling_report(const CoefficientMatrix& a,
                                                    const CoefficientMatrix& b,
                                                    int max_order,
                                                    int enumeration_cap = 8);

} // namespace permcorr
