#include "permcorr/conditions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace permcorr {

const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::Daniels: return "daniels";
        case TheoremId::Pham1: return "pham1";
        case TheoremId::Pham2: return "pham2";
        case TheoremId::Pham3: return "pham3";
        case TheoremId::Main: return "main";
    }
    return "main";
}

namespace {

constexpr const char* kAdvisory =
    "Ratio diagnostics are finite-N snapshots of asymptotic conditions "
    "(o(1), O(1), asymptotic equivalence, limsup); a single N cannot decide "
    "a limit. Use the sweep command to observe trends.";

std::optional<double> ratio(double numerator, double denominator) {
    if (denominator == 0.0) {
        return std::nullopt;
    }
    return numerator / denominator;
}

struct MatrixStats {
    int n = 0;
    double total_sum = 0.0;       // all entries
    double sum_sq = 0.0;          // all entries squared
    double max_abs = 0.0;
    double max_row_abs_sum = 0.0; // max_i sum_j |a_ij|
    double triple_sum = 0.0;      // sum_i (row sum)^2
    double row_sq_sum = 0.0;      // sum_i (row sum)^2 == triple_sum (kept for clarity)
    bool rows_zero = true;
    bool cols_zero = true;
    bool total_zero = true;
    bool hollow = true;
};

// Zero checks use a tolerance scaled to the matrix, since builder outputs
// are centered in floating point.
MatrixStats matrix_stats(const CoefficientMatrix& a) {
    const int n = a.order();
    MatrixStats s;
    s.n = n;
    s.max_abs = a.max_abs();
    std::vector<double> row(n, 0.0), col(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double row_abs = 0.0;
        for (int j = 0; j < n; ++j) {
            const double v = a(i, j);
            s.total_sum += v;
            s.sum_sq += v * v;
            row_abs += std::fabs(v);
            row[i] += v;
            col[j] += v;
        }
        s.max_row_abs_sum = std::max(s.max_row_abs_sum, row_abs);
        if (a(i, i) != 0.0) s.hollow = false;
    }
    const double row_tol = 1e-12 * n * s.max_abs;
    const double total_tol = 1e-12 * n * n * s.max_abs;
    for (int i = 0; i < n; ++i) {
        s.triple_sum += row[i] * row[i];
        if (std::fabs(row[i]) > row_tol) s.rows_zero = false;
        if (std::fabs(col[i]) > row_tol) s.cols_zero = false;
    }
    s.row_sq_sum = s.triple_sum;
    s.total_zero = std::fabs(s.total_sum) <= total_tol;
    return s;
}

void push_h_ratios(ConditionReport& report, const MatrixStats& sa, const MatrixStats& sb) {
    const double n3 = static_cast<double>(sa.n) * sa.n * sa.n;
    report.ratio_diagnostics.emplace_back("h_a", ratio(sa.triple_sum, n3 * sa.max_abs * sa.max_abs));
    report.ratio_diagnostics.emplace_back("h_b", ratio(sb.triple_sum, n3 * sb.max_abs * sb.max_abs));
}

void push_symmetry_pairing(ConditionReport& report, const CoefficientMatrix& a,
                           const CoefficientMatrix& b) {
    const bool both_symmetric = a.symmetry_class() == SymmetryClass::Symmetric &&
                                b.symmetry_class() == SymmetryClass::Symmetric;
    const bool both_antisymmetric = a.symmetry_class() == SymmetryClass::Antisymmetric &&
                                    b.symmetry_class() == SymmetryClass::Antisymmetric;
    report.structural_checks.emplace_back("symmetry_classes_paired",
                                          both_symmetric || both_antisymmetric);
}

double row_sum_moment(const std::vector<double>& rows, int r, bool absolute) {
    double sum = 0.0;
    for (double v : rows) {
        sum += absolute ? std::pow(std::fabs(v), r) : std::pow(v, r);
    }
    return sum;
}

std::vector<double> full_row_sums(const CoefficientMatrix& a) {
    const int n = a.order();
    std::vector<double> rows(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rows[i] += a(i, j);
        }
    }
    return rows;
}

double sum_sq(const CoefficientMatrix& a) {
    double q = 0.0;
    for (double v : a.data()) q += v * v;
    return q;
}

} // namespace

CoefficientMatrix prime_transform(const CoefficientMatrix& a) {
    const int n = a.order();
    // The off-diagonal grand sum of an antisymmetric matrix is zero by
    // definition; using the exact value keeps the class intact bitwise.
    double center = 0.0;
    if (a.symmetry_class() != SymmetryClass::Antisymmetric) {
        double s_off = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j) s_off += a(i, j);
            }
        }
        center = s_off / (static_cast<double>(n) * (n - 1));
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                out[static_cast<std::size_t>(i) * n + j] = a(i, j) - center;
            }
        }
    }
    const SymmetryClass cls = classify_entries(n, out);
    return CoefficientMatrix(n, std::move(out), cls, true);
}

CoefficientMatrix star_transform(const CoefficientMatrix& a, StarSetting setting) {
    const int n = a.order();
    if (setting == StarSetting::Symmetric && n < 3) {
        throw std::invalid_argument("star_transform: symmetric setting needs N >= 3");
    }
    const CoefficientMatrix prime = prime_transform(a);
    std::vector<double> row(n, 0.0), col(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            row[i] += prime(i, j);
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            col[j] += prime(i, j);
        }
    }
    const double divisor = setting == StarSetting::Symmetric ? n - 2 : n;
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double base = setting == StarSetting::Symmetric ? prime(i, j) : a(i, j);
            out[static_cast<std::size_t>(i) * n + j] = base - (row[i] + col[j]) / divisor;
        }
    }
    const SymmetryClass cls = classify_entries(n, out);
    return CoefficientMatrix(n, std::move(out), cls, true);
}

ConditionReport diagnose(const CoefficientMatrix& a, const CoefficientMatrix& b,
                         TheoremId theorem, int max_moment_r) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("diagnose: matrix orders differ");
    }
    if (max_moment_r < 3) {
        throw std::invalid_argument("diagnose: max_moment_r must be at least 3");
    }
    const int n = a.order();
    const MatrixStats sa = matrix_stats(a);
    const MatrixStats sb = matrix_stats(b);

    ConditionReport report;
    report.theorem = theorem;
    report.advisory = kAdvisory;
    auto& checks = report.structural_checks;
    auto& ratios = report.ratio_diagnostics;

    switch (theorem) {
        case TheoremId::Daniels: {
            checks.emplace_back("a_antisymmetric",
                                a.symmetry_class() == SymmetryClass::Antisymmetric);
            checks.emplace_back("b_antisymmetric",
                                b.symmetry_class() == SymmetryClass::Antisymmetric);
            checks.emplace_back("a_hollow", sa.hollow);
            checks.emplace_back("b_hollow", sb.hollow);
            push_h_ratios(report, sa, sb);
            break;
        }
        case TheoremId::Main: {
            checks.emplace_back("a_symmetric", a.symmetry_class() == SymmetryClass::Symmetric);
            checks.emplace_back("b_symmetric", b.symmetry_class() == SymmetryClass::Symmetric);
            checks.emplace_back("a_zero_total_sum", sa.total_zero);
            checks.emplace_back("b_zero_total_sum", sb.total_zero);
            push_h_ratios(report, sa, sb);
            break;
        }
        case TheoremId::Pham1: {
            push_symmetry_pairing(report, a, b);
            checks.emplace_back("a_hollow", sa.hollow);
            checks.emplace_back("b_hollow", sb.hollow);
            const StarSetting setting =
                a.symmetry_class() == SymmetryClass::Antisymmetric &&
                        b.symmetry_class() == SymmetryClass::Antisymmetric
                    ? StarSetting::Antisymmetric
                    : StarSetting::Symmetric;
            const CoefficientMatrix a_prime = prime_transform(a);
            const CoefficientMatrix b_prime = prime_transform(b);
            const std::vector<double> a_rows = full_row_sums(a_prime);
            const std::vector<double> b_rows = full_row_sums(b_prime);
            const double a_row_sq = row_sum_moment(a_rows, 2, false);
            const double b_row_sq = row_sum_moment(b_rows, 2, false);
            std::optional<double> star_ratio;
            if (n >= 3) {
                const CoefficientMatrix a_star = star_transform(a, setting);
                const CoefficientMatrix b_star = star_transform(b, setting);
                star_ratio = ratio(n * sum_sq(a_star) * sum_sq(b_star), a_row_sq * b_row_sq);
            }
            ratios.emplace_back("star_ratio", star_ratio);
            for (int r = 3; r <= max_moment_r; ++r) {
                ratios.emplace_back("a_rowsum_moment_r" + std::to_string(r),
                                    ratio(row_sum_moment(a_rows, r, false),
                                          std::pow(a_row_sq, 0.5 * r)));
            }
            for (int r = 3; r <= max_moment_r; ++r) {
                ratios.emplace_back("b_rowsum_abs_moment_r" + std::to_string(r),
                                    ratio(row_sum_moment(b_rows, r, true),
                                          std::pow(b_row_sq, 0.5 * r)));
            }
            double b_max_row_sq = 0.0;
            for (double v : b_rows) b_max_row_sq = std::max(b_max_row_sq, v * v);
            ratios.emplace_back("b_max_rowsum_share", ratio(b_max_row_sq, b_row_sq));
            break;
        }
        case TheoremId::Pham2: {
            push_symmetry_pairing(report, a, b);
            checks.emplace_back("b_zero_row_sums", sb.rows_zero);
            checks.emplace_back("b_zero_col_sums", sb.cols_zero);
            ratios.emplace_back("a_rowsum_vs_bound",
                                ratio(sa.max_row_abs_sum * n * sa.max_abs, sa.sum_sq));
            ratios.emplace_back("a_sq_density",
                                ratio(sa.sum_sq, static_cast<double>(n) * n * sa.max_abs * sa.max_abs));
            const double n2 = static_cast<double>(n) * n;
            for (int r = 3; r <= max_moment_r; ++r) {
                double abs_moment = 0.0;
                for (double v : b.data()) abs_moment += std::pow(std::fabs(v), r);
                ratios.emplace_back("b_moment_ratio_r" + std::to_string(r),
                                    ratio(abs_moment / n2, std::pow(sb.sum_sq / n2, 0.5 * r)));
            }
            break;
        }
        case TheoremId::Pham3: {
            push_symmetry_pairing(report, a, b);
            checks.emplace_back("a_zero_total_sum", sa.total_zero);
            checks.emplace_back("b_zero_total_sum", sb.total_zero);
            ratios.emplace_back("a_max_rowsum_over_max_entry",
                                ratio(sa.max_row_abs_sum, sa.max_abs));
            ratios.emplace_back("a_sq_over_n_max",
                                ratio(sa.sum_sq, n * sa.max_abs * sa.max_abs));
            ratios.emplace_back("b_rowsum_energy_fraction",
                                ratio(sb.row_sq_sum / n, sb.sum_sq));
            break;
        }
    }
    return report;
}

BoundedEntriesScenario scenario_bounded_entries(int n) {
    if (n < 3) {
        throw std::invalid_argument("scenario_bounded_entries: n must be at least 3");
    }
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i) {
        entries[static_cast<std::size_t>(i) * n + i] = 0.0;
    }
    const CoefficientMatrix ones(n, std::move(entries), SymmetryClass::Symmetric, true);
    BoundedEntriesScenario scenario{
        diagnose(ones, ones, TheoremId::Pham2),
        diagnose(ones, ones, TheoremId::Pham3),
        diagnose(ones, ones, TheoremId::Main),
    };
    return scenario;
}

} // namespace permcorr
