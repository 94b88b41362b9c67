#pragma once

#include <optional>
#include <vector>

#include "permcorr/matrix.hpp"

namespace permcorr {

// N points in R^d, d >= 1, N >= 2.
class Sample {
public:
    explicit Sample(std::vector<std::vector<double>> points);

    int size() const { return static_cast<int>(points_.size()); }
    int dimension() const { return static_cast<int>(points_.front().size()); }
    const std::vector<double>& point(int i) const { return points_[i]; }
    const std::vector<std::vector<double>>& points() const { return points_; }

private:
    std::vector<std::vector<double>> points_;
};

// Binary group labels; both groups nonempty.
class LabelVector {
public:
    explicit LabelVector(std::vector<int> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    int label(int i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }
    int zeros() const { return zeros_; }
    int ones() const { return ones_; }

private:
    std::vector<int> labels_;
    int zeros_ = 0;
    int ones_ = 0;
};

// a_ij = values_i - values_j (antisymmetric, hollow).
CoefficientMatrix diff_matrix(const std::vector<double>& values);

// diff_matrix on midranks; ties get average ranks.
CoefficientMatrix rank_diff_matrix(const std::vector<double>& values);

// a_ij = sign(values_i - values_j), sign(0) = 0.
CoefficientMatrix sign_diff_matrix(const std::vector<double>& values);

// Average ranks (1-based) with midrank tie handling.
std::vector<double> midranks(const std::vector<double>& values);

// 0/1 adjacency of the Euclidean minimum spanning tree over the sample,
// built by Kruskal; distance ties break on the lexicographic (min index,
// max index) edge order so degenerate point sets stay reproducible.
CoefficientMatrix mst_adjacency(const Sample& sample);

// Gaussian kernel exp(-|x_i - x_j|^2 / (2 sigma^2)). bandwidth == nullopt
// selects the median of the N(N-1)/2 pairwise distances (mean of the two
// central values for an even count). The diagonal is zeroed to keep the
// matrix hollow; keep_diagonal restores the raw Gram diagonal.
CoefficientMatrix kernel_matrix(const Sample& sample, std::optional<double> bandwidth,
                                bool keep_diagonal = false);

// Label-contrast matrix of the unbiased kernel two-sample statistic:
// 1/(m(m-1)) within group 0, 1/(n(n-1)) within group 1, -1/(mn) across,
// zero diagonal. Off-diagonal total is 0. Requires both groups >= 2.
CoefficientMatrix mmd_label_matrix(const LabelVector& labels);

enum class WeightRule { MOverN, M1OverN2, Explicit };

// b_ij = (1-p)(1-y_i)(1-y_j) + p y_i y_j, diagonal included as the formula
// gives it (not hollow).
CoefficientMatrix weighted_label_matrix(const LabelVector& labels, WeightRule rule,
                                        double explicit_p = 0.0);

// b_ij = |y_i - y_j|: 1 across groups, 0 within.
CoefficientMatrix abs_label_diff(const LabelVector& labels);

// a_ij = |x_i - x_j| - dbar off the diagonal, where dbar is the mean
// off-diagonal distance; symmetric, hollow, zero total sum by construction.
CoefficientMatrix centered_distance_matrix(const Sample& sample);

} // namespace permcorr
