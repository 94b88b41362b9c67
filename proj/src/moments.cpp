#include "permcorr/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "permcorr/errors.hpp"
#include "permcorr/null_dist.hpp"

namespace permcorr {

const char* to_string(NormalizerKind k) {
    switch (k) {
        case NormalizerKind::ExactSd: return "exact_sd";
        case NormalizerKind::Daniels: return "daniels";
        case NormalizerKind::Pham2: return "pham2";
        case NormalizerKind::Pham3: return "pham3";
    }
    return "exact_sd";
}

namespace {

void require_same_order(const CoefficientMatrix& a, const CoefficientMatrix& b,
                        const char* where) {
    if (a.order() != b.order()) {
        throw std::invalid_argument(std::string(where) + ": matrix orders differ");
    }
}

// N (N-1) ... (N-k+1)
double falling(int n, int k) {
    double f = 1.0;
    for (int i = 0; i < k; ++i) {
        f *= n - i;
    }
    return f;
}

struct OffdiagAggregates {
    double s_off = 0.0;
    double d_diag = 0.0;
    double q_off = 0.0;   // sum' a_ij^2
    double q_swap = 0.0;  // sum' a_ij a_ji
    double shared_row = 0.0;  // sum' a_jk a_ju   (j,k,u distinct)
    double shared_col = 0.0;  // sum' a_jk a_sk
    double chained = 0.0;     // sum' a_jk a_ku
    double pair4 = 0.0;       // sum' a_jk a_su   (all four distinct)
};

OffdiagAggregates offdiag_aggregates(const CoefficientMatrix& a) {
    const int n = a.order();
    std::vector<double> row(n, 0.0), col(n, 0.0);
    OffdiagAggregates s;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = a(i, j);
            if (i == j) {
                s.d_diag += v;
            } else {
                s.s_off += v;
                s.q_off += v * v;
                s.q_swap += v * a(j, i);
                row[i] += v;
                col[j] += v;
            }
        }
    }
    double row_sq = 0.0, col_sq = 0.0, row_col = 0.0;
    for (int i = 0; i < n; ++i) {
        row_sq += row[i] * row[i];
        col_sq += col[i] * col[i];
        row_col += row[i] * col[i];
    }
    s.shared_row = row_sq - s.q_off;
    s.shared_col = col_sq - s.q_off;
    s.chained = row_col - s.q_swap;
    s.pair4 = (n < 4) ? 0.0
                      : s.s_off * s.s_off - s.shared_row - s.shared_col - 2.0 * s.chained -
                            s.q_off - s.q_swap;
    return s;
}

// The seven-term expansion over independent-subscript patterns; the
// arrangement counts 4, 2, 4 presume symmetric entries.
double second_moment_symmetric(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    const int n = a.order();
    double total = 0.0;
    if (n >= 4) {
        total += restricted_sum(a, DistinctSumPattern::P4) *
                 restricted_sum(b, DistinctSumPattern::P4) / falling(n, 4);
    }
    if (n >= 3) {
        total += 4.0 * restricted_sum(a, DistinctSumPattern::P3Shared) *
                 restricted_sum(b, DistinctSumPattern::P3Shared) / falling(n, 3);
        total += 2.0 * restricted_sum(a, DistinctSumPattern::P3Diag) *
                 restricted_sum(b, DistinctSumPattern::P3Diag) / falling(n, 3);
    }
    total += 2.0 * restricted_sum(a, DistinctSumPattern::P2Sq) *
             restricted_sum(b, DistinctSumPattern::P2Sq) / falling(n, 2);
    total += restricted_sum(a, DistinctSumPattern::P2DiagPair) *
             restricted_sum(b, DistinctSumPattern::P2DiagPair) / falling(n, 2);
    total += 4.0 * restricted_sum(a, DistinctSumPattern::P2Mixed) *
             restricted_sum(b, DistinctSumPattern::P2Mixed) / falling(n, 2);
    // The single-subscript term a_jj^2 b_ii^2 repeats (N-1)! times, i.e. 1/N.
    total += restricted_sum(a, DistinctSumPattern::P1) *
             restricted_sum(b, DistinctSumPattern::P1) / static_cast<double>(n);
    return total;
}

// Hollow inputs of any symmetry class: track each of the nine index patterns
// separately so that no arrangement count assumes a_jk = a_kj. Mirror-image
// chain patterns coincide as sums, leaving factor 2 on the chained term.
double second_moment_hollow(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    const int n = a.order();
    const OffdiagAggregates sa = offdiag_aggregates(a);
    const OffdiagAggregates sb = offdiag_aggregates(b);
    double total = 0.0;
    if (n >= 4) {
        total += sa.pair4 * sb.pair4 / falling(n, 4);
    }
    if (n >= 3) {
        total += (sa.shared_row * sb.shared_row + sa.shared_col * sb.shared_col +
                  2.0 * sa.chained * sb.chained) /
                 falling(n, 3);
    }
    total += (sa.q_off * sb.q_off + sa.q_swap * sb.q_swap) / falling(n, 2);
    return total;
}

} // namespace

double exact_mean(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    require_same_order(a, b, "exact_mean");
    const int n = a.order();
    const OffdiagAggregates sa = offdiag_aggregates(a);
    const OffdiagAggregates sb = offdiag_aggregates(b);
    return sa.s_off * sb.s_off / falling(n, 2) + sa.d_diag * sb.d_diag / n;
}

double exact_second_moment(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    require_same_order(a, b, "exact_second_moment");
    const bool both_symmetric = a.symmetry_class() == SymmetryClass::Symmetric &&
                                b.symmetry_class() == SymmetryClass::Symmetric;
    if (both_symmetric) {
        return second_moment_symmetric(a, b);
    }
    const bool hollow_a = a.hollow() || a.symmetry_class() == SymmetryClass::Antisymmetric;
    const bool hollow_b = b.hollow() || b.symmetry_class() == SymmetryClass::Antisymmetric;
    if (hollow_a && hollow_b) {
        return second_moment_hollow(a, b);
    }
    throw std::invalid_argument(
        "exact_second_moment: closed form needs symmetric inputs or hollow inputs; "
        "use the enumeration oracle for a general matrix with a nonzero diagonal");
}

double variance_epsilon(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    const double scale = static_cast<double>(a.order()) * a.order() * a.max_abs() * b.max_abs();
    return 1e-12 * scale * scale;
}

double exact_variance(const CoefficientMatrix& a, const CoefficientMatrix& b, bool* degenerate) {
    const double mean = exact_mean(a, b);
    const double second = exact_second_moment(a, b);
    double var = second - mean * mean;
    const bool below = var < variance_epsilon(a, b);
    if (var < 0.0) {
        var = 0.0;
    }
    if (degenerate != nullptr) {
        *degenerate = below;
    }
    return var;
}

double normalizer(const CoefficientMatrix& a, const CoefficientMatrix& b, NormalizerKind kind) {
    require_same_order(a, b, "normalizer");
    const int n = a.order();
    const double n3 = static_cast<double>(n) * n * n;
    const double n2 = static_cast<double>(n) * n;
    switch (kind) {
        case NormalizerKind::ExactSd:
            return std::sqrt(exact_variance(a, b));
        case NormalizerKind::Daniels: {
            const double ta = elementary_sums(a).triple_sum;
            const double tb = elementary_sums(b).triple_sum;
            return 2.0 * std::sqrt(ta * tb / n3);
        }
        case NormalizerKind::Pham2: {
            const double qa = elementary_sums(a).sum_sq_offdiag + restricted_sum(a, DistinctSumPattern::P1);
            const double qb = elementary_sums(b).sum_sq_offdiag + restricted_sum(b, DistinctSumPattern::P1);
            return std::sqrt(2.0 * qa * qb / n2);
        }
        case NormalizerKind::Pham3: {
            const double pa = restricted_sum(a, DistinctSumPattern::P3Shared);
            const double pb = restricted_sum(b, DistinctSumPattern::P3Shared);
            const double qa = elementary_sums(a).sum_sq_offdiag + restricted_sum(a, DistinctSumPattern::P1);
            const double qb = elementary_sums(b).sum_sq_offdiag + restricted_sum(b, DistinctSumPattern::P1);
            // The distinct-pair product can be negative off the theorem's
            // conditions; clamp so the normalizer stays real.
            const double radicand = 4.0 * pa * pb / n3 + 2.0 * qa * qb / n2;
            return std::sqrt(std::max(radicand, 0.0));
        }
    }
    throw std::invalid_argument("unknown normalizer kind");
}

double standardize(double gamma_obs, const CoefficientMatrix& a, const CoefficientMatrix& b,
                   NormalizerKind kind) {
    if (kind == NormalizerKind::ExactSd) {
        bool degenerate = false;
        const double var = exact_variance(a, b, &degenerate);
        if (degenerate || var <= 0.0) {
            throw DegenerateError("standardize: permutation variance is degenerate");
        }
        return (gamma_obs - exact_mean(a, b)) / std::sqrt(var);
    }
    const double denom = normalizer(a, b, kind);
    if (denom <= 0.0) {
        throw DegenerateError(std::string("standardize: ") + to_string(kind) +
                              " normalizer is zero");
    }
    return gamma_obs / denom;
}

MomentReport moment_report(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    MomentReport r;
    r.mean = exact_mean(a, b);
    try {
        r.second_moment = exact_second_moment(a, b);
        bool degenerate = false;
        r.variance = exact_variance(a, b, &degenerate);
        r.degenerate = degenerate;
    } catch (const std::invalid_argument&) {
        // No closed-form route; the fields stay absent.
    }
    r.normalizer_daniels = normalizer(a, b, NormalizerKind::Daniels);
    r.normalizer_pham2 = normalizer(a, b, NormalizerKind::Pham2);
    r.normalizer_pham3 = normalizer(a, b, NormalizerKind::Pham3);
    return r;
}

std::vector<MomentScalingRow> moment_scaling_report(const CoefficientMatrix& a,
                                                    const CoefficientMatrix& b, int max_order,
                                                    int enumeration_cap) {
    if (max_order < 1 || max_order > 6) {
        throw std::invalid_argument("moment_scaling_report: max_order must lie in 1..6");
    }
    std::vector<MomentScalingRow> rows;
    rows.reserve(max_order);
    const int n = a.order();
    for (int p = 1; p <= max_order; ++p) {
        MomentScalingRow row;
        row.order = p;
        row.moment = exact_moment(a, b, p, enumeration_cap);
        const double denom =
            std::pow(n, 1.5 * p) * std::pow(a.max_abs(), p) * std::pow(b.max_abs(), p);
        row.scaled = denom > 0.0 ? row.moment / denom : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace permcorr
