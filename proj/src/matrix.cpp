#include "permcorr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permcorr {

const char* to_string(SymmetryClass c) {
    switch (c) {
        case SymmetryClass::Symmetric: return "symmetric";
        case SymmetryClass::Antisymmetric: return "antisymmetric";
        case SymmetryClass::General: return "general";
    }
    return "general";
}

namespace {

// Error positions are reported 1-based.
std::string index_pair(int i, int j) {
    return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

} // namespace

CoefficientMatrix::CoefficientMatrix(int n, std::vector<double> row_major,
                                     SymmetryClass symmetry, bool hollow)
    : n_(n), symmetry_(symmetry), hollow_(hollow), max_abs_(0.0), data_(std::move(row_major)) {
    if (n_ < 2) {
        throw std::invalid_argument("matrix order must be at least 2, got " + std::to_string(n_));
    }
    if (data_.size() != static_cast<std::size_t>(n_) * n_) {
        throw std::invalid_argument("entry count " + std::to_string(data_.size()) +
                                    " does not match order " + std::to_string(n_));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("matrix entries must be finite");
        }
    }
    for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) {
            const double vij = (*this)(i, j);
            const double vji = (*this)(j, i);
            if (symmetry_ == SymmetryClass::Symmetric && vij != vji) {
                throw std::invalid_argument("symmetry violation at " + index_pair(i, j));
            }
            if (symmetry_ == SymmetryClass::Antisymmetric && vij != -vji) {
                throw std::invalid_argument("antisymmetry violation at " + index_pair(i, j));
            }
        }
        if ((hollow_ || symmetry_ == SymmetryClass::Antisymmetric) && (*this)(i, i) != 0.0) {
            throw std::invalid_argument("nonzero diagonal entry at index " + std::to_string(i + 1));
        }
    }
    for (double v : data_) {
        max_abs_ = std::max(max_abs_, std::fabs(v));
    }
}

CoefficientMatrix CoefficientMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                               SymmetryClass symmetry, bool hollow) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) {
            throw std::invalid_argument("matrix rows must all have length " + std::to_string(n));
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return CoefficientMatrix(n, std::move(flat), symmetry, hollow);
}

SymmetryClass classify_entries(int n, const std::vector<double>& row_major) {
    auto at = [&](int i, int j) { return row_major[static_cast<std::size_t>(i) * n + j]; };
    bool symmetric = true;
    bool antisymmetric = true;
    for (int i = 0; i < n && (symmetric || antisymmetric); ++i) {
        for (int j = i; j < n; ++j) {
            if (at(i, j) != at(j, i)) symmetric = false;
            if (at(i, j) != -at(j, i)) antisymmetric = false;
        }
    }
    if (symmetric) return SymmetryClass::Symmetric;
    if (antisymmetric) return SymmetryClass::Antisymmetric;
    return SymmetryClass::General;
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    const int n = static_cast<int>(mapping_.size());
    if (n < 1) {
        throw std::invalid_argument("empty permutation");
    }
    std::vector<bool> seen(mapping_.size(), false);
    for (int v : mapping_) {
        if (v < 0 || v >= n || seen[v]) {
            throw std::invalid_argument("permutation is not a bijection of {1.." +
                                        std::to_string(n) + "}");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> mapping(n);
    std::iota(mapping.begin(), mapping.end(), 0);
    return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(mapping_.size());
    for (int i = 0; i < size(); ++i) {
        inv[mapping_[i]] = i;
    }
    return Permutation(std::move(inv));
}

double gamma_statistic(const CoefficientMatrix& a, const CoefficientMatrix& b,
                       const Permutation& perm) {
    const int n = a.order();
    if (b.order() != n || perm.size() != n) {
        throw std::invalid_argument("gamma_statistic: size mismatch");
    }
    const double* ad = a.data().data();
    const double* bd = b.data().data();
    const int* p = perm.mapping().data();
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* arow = ad + static_cast<std::size_t>(i) * n;
        const double* brow = bd + static_cast<std::size_t>(p[i]) * n;
        double row_total = 0.0;
        for (int j = 0; j < n; ++j) {
            row_total += arow[j] * brow[p[j]];
        }
        total += row_total;
    }
    return total;
}

CoefficientMatrix apply_permutation(const CoefficientMatrix& b, const Permutation& perm) {
    const int n = b.order();
    if (perm.size() != n) {
        throw std::invalid_argument("apply_permutation: size mismatch");
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out[static_cast<std::size_t>(i) * n + j] = b(perm(i), perm(j));
        }
    }
    return CoefficientMatrix(n, std::move(out), b.symmetry_class(), b.hollow());
}

ElementarySums elementary_sums(const CoefficientMatrix& a) {
    const int n = a.order();
    ElementarySums s;
    s.row_sums.assign(n, 0.0);
    s.col_sums.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = a(i, j);
            s.row_sums[i] += v;
            s.col_sums[j] += v;
            if (i == j) {
                s.sum_diag += v;
            } else {
                s.sum_offdiag += v;
                s.sum_sq_offdiag += v * v;
            }
            s.max_abs = std::max(s.max_abs, std::fabs(v));
        }
    }
    for (int i = 0; i < n; ++i) {
        s.triple_sum += s.row_sums[i] * s.row_sums[i];
    }
    return s;
}

namespace {

// Off-diagonal aggregates the inclusion-exclusion kernels reduce to.
struct OffdiagSums {
    double s_off = 0.0;        // sum' a_ij
    double d_diag = 0.0;       // sum a_ii
    double q_off = 0.0;        // sum' a_ij^2
    double q_diag = 0.0;       // sum a_ii^2
    double q_swap = 0.0;       // sum' a_ij a_ji
    double row_sq = 0.0;       // sum_i r'_i^2   (r' = off-diagonal row sums)
    double col_sq = 0.0;       // sum_j c'_j^2
    double row_col = 0.0;      // sum_i r'_i c'_i
    double diag_row = 0.0;     // sum_i a_ii r'_i
    double diag_col = 0.0;     // sum_i a_ii c'_i
};

OffdiagSums offdiag_sums(const CoefficientMatrix& a) {
    const int n = a.order();
    std::vector<double> row(n, 0.0), col(n, 0.0);
    OffdiagSums s;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = a(i, j);
            if (i == j) {
                s.d_diag += v;
                s.q_diag += v * v;
            } else {
                s.s_off += v;
                s.q_off += v * v;
                s.q_swap += v * a(j, i);
                row[i] += v;
                col[j] += v;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        s.row_sq += row[i] * row[i];
        s.col_sq += col[i] * col[i];
        s.row_col += row[i] * col[i];
        s.diag_row += a(i, i) * row[i];
        s.diag_col += a(i, i) * col[i];
    }
    return s;
}

} // namespace

double restricted_sum(const CoefficientMatrix& a, DistinctSumPattern pattern) {
    const int n = a.order();
    const OffdiagSums s = offdiag_sums(a);
    // Sums over k distinct subscripts are empty below order k.
    switch (pattern) {
        case DistinctSumPattern::P4: {
            if (n < 4) return 0.0;
            const double shared_row = s.row_sq - s.q_off;       // sum' a_jk a_ju
            const double shared_col = s.col_sq - s.q_off;       // sum' a_jk a_sk
            const double chained = s.row_col - s.q_swap;        // sum' a_jk a_ku
            return s.s_off * s.s_off - shared_row - shared_col - 2.0 * chained - s.q_off -
                   s.q_swap;
        }
        case DistinctSumPattern::P3Shared:
            if (n < 3) return 0.0;
            return s.row_sq - s.q_off;
        case DistinctSumPattern::P3Diag:
            if (n < 3) return 0.0;
            return s.d_diag * s.s_off - s.diag_row - s.diag_col;
        case DistinctSumPattern::P2Sq:
            return s.q_off;
        case DistinctSumPattern::P2DiagPair:
            return s.d_diag * s.d_diag - s.q_diag;
        case DistinctSumPattern::P2Mixed:
            return s.diag_row;
        case DistinctSumPattern::P1:
            return s.q_diag;
    }
    throw std::invalid_argument("unknown distinct-sum pattern");
}

} // namespace permcorr
