#include "permcorr/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace permcorr {

Sample::Sample(std::vector<std::vector<double>> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("sample needs at least 2 points");
    }
    const std::size_t d = points_.front().size();
    if (d < 1) {
        throw std::invalid_argument("points need dimension at least 1");
    }
    for (const auto& p : points_) {
        if (p.size() != d) {
            throw std::invalid_argument("all points must share one dimension");
        }
        for (double v : p) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("point coordinates must be finite");
            }
        }
    }
}

LabelVector::LabelVector(std::vector<int> labels) : labels_(std::move(labels)) {
    for (int v : labels_) {
        if (v == 0) {
            ++zeros_;
        } else if (v == 1) {
            ++ones_;
        } else {
            throw std::invalid_argument("labels must be 0 or 1");
        }
    }
    if (zeros_ < 1 || ones_ < 1) {
        throw std::invalid_argument("both label groups must be nonempty");
    }
}

namespace {

double euclidean(const std::vector<double>& x, const std::vector<double>& y) {
    double sq = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

double squared_distance(const std::vector<double>& x, const std::vector<double>& y) {
    double sq = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        sq += d * d;
    }
    return sq;
}

CoefficientMatrix antisymmetric_from(const std::vector<double>& values,
                                     double (*entry)(double, double)) {
    const int n = static_cast<int>(values.size());
    if (n < 2) {
        throw std::invalid_argument("need at least 2 values");
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                out[static_cast<std::size_t>(i) * n + j] = entry(values[i], values[j]);
            }
        }
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Antisymmetric, true);
}

} // namespace

CoefficientMatrix diff_matrix(const std::vector<double>& values) {
    return antisymmetric_from(values, [](double x, double y) { return x - y; });
}

std::vector<double> midranks(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return values[i] < values[j]; });
    std::vector<double> ranks(n, 0.0);
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && values[order[j]] == values[order[i]]) {
            ++j;
        }
        // 1-based average rank of the tie group occupying positions i..j-1.
        const double avg = 0.5 * (i + j + 1);
        for (int k = i; k < j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j;
    }
    return ranks;
}

CoefficientMatrix rank_diff_matrix(const std::vector<double>& values) {
    return diff_matrix(midranks(values));
}

CoefficientMatrix sign_diff_matrix(const std::vector<double>& values) {
    return antisymmetric_from(values, [](double x, double y) {
        return x > y ? 1.0 : (x < y ? -1.0 : 0.0);
    });
}

CoefficientMatrix mst_adjacency(const Sample& sample) {
    const int n = sample.size();
    struct Edge {
        double d2;
        int i, j;
    };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.push_back({squared_distance(sample.point(i), sample.point(j)), i, j});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) {
        if (l.d2 != r.d2) return l.d2 < r.d2;
        if (l.i != r.i) return l.i < r.i;
        return l.j < r.j;
    });

    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };

    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    int accepted = 0;
    for (const Edge& e : edges) {
        const int ri = find(e.i);
        const int rj = find(e.j);
        if (ri == rj) continue;
        parent[ri] = rj;
        out[static_cast<std::size_t>(e.i) * n + e.j] = 1.0;
        out[static_cast<std::size_t>(e.j) * n + e.i] = 1.0;
        if (++accepted == n - 1) break;
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Symmetric, true);
}

CoefficientMatrix kernel_matrix(const Sample& sample, std::optional<double> bandwidth,
                                bool keep_diagonal) {
    const int n = sample.size();
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = euclidean(sample.point(i), sample.point(j));
            dist[static_cast<std::size_t>(i) * n + j] = d;
            dist[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    double sigma;
    if (bandwidth.has_value()) {
        sigma = *bandwidth;
        if (!(sigma > 0.0)) {
            throw std::invalid_argument("kernel bandwidth must be positive");
        }
    } else {
        std::vector<double> pairwise;
        pairwise.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                pairwise.push_back(dist[static_cast<std::size_t>(i) * n + j]);
            }
        }
        std::sort(pairwise.begin(), pairwise.end());
        const std::size_t m = pairwise.size();
        sigma = (m % 2 == 1) ? pairwise[m / 2]
                             : 0.5 * (pairwise[m / 2 - 1] + pairwise[m / 2]);
        if (sigma == 0.0) {
            throw std::invalid_argument(
                "median bandwidth is zero (all points identical); supply a bandwidth");
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                out[static_cast<std::size_t>(i) * n + j] = keep_diagonal ? 1.0 : 0.0;
            } else {
                const double d = dist[static_cast<std::size_t>(i) * n + j];
                out[static_cast<std::size_t>(i) * n + j] =
                    std::exp(-d * d / (2.0 * sigma * sigma));
            }
        }
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Symmetric, !keep_diagonal);
}

CoefficientMatrix mmd_label_matrix(const LabelVector& labels) {
    const int n = labels.size();
    const double m0 = labels.zeros();
    const double m1 = labels.ones();
    if (labels.zeros() < 2 || labels.ones() < 2) {
        throw std::invalid_argument("mmd_label_matrix needs both groups of size >= 2");
    }
    const double within0 = 1.0 / (m0 * (m0 - 1.0));
    const double within1 = 1.0 / (m1 * (m1 - 1.0));
    const double across = -1.0 / (m0 * m1);
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int yi = labels.label(i);
            const int yj = labels.label(j);
            out[static_cast<std::size_t>(i) * n + j] =
                (yi == yj) ? (yi == 0 ? within0 : within1) : across;
        }
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Symmetric, true);
}

CoefficientMatrix weighted_label_matrix(const LabelVector& labels, WeightRule rule,
                                        double explicit_p) {
    const int n = labels.size();
    double p;
    switch (rule) {
        case WeightRule::MOverN:
            p = static_cast<double>(labels.zeros()) / n;
            break;
        case WeightRule::M1OverN2:
            if (n < 3) {
                throw std::invalid_argument("p rule (m-1)/(N-2) needs N >= 3");
            }
            p = static_cast<double>(labels.zeros() - 1) / (n - 2);
            break;
        case WeightRule::Explicit:
            p = explicit_p;
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("explicit p must lie in [0, 1]");
            }
            break;
        default:
            throw std::invalid_argument("unknown weight rule");
    }
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double yi = labels.label(i);
            const double yj = labels.label(j);
            out[static_cast<std::size_t>(i) * n + j] =
                (1.0 - p) * (1.0 - yi) * (1.0 - yj) + p * yi * yj;
        }
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Symmetric, false);
}

CoefficientMatrix abs_label_diff(const LabelVector& labels) {
    const int n = labels.size();
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out[static_cast<std::size_t>(i) * n + j] =
                std::fabs(labels.label(i) - labels.label(j));
        }
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Symmetric, true);
}

CoefficientMatrix centered_distance_matrix(const Sample& sample) {
    const int n = sample.size();
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = euclidean(sample.point(i), sample.point(j));
            dist[static_cast<std::size_t>(i) * n + j] = d;
            dist[static_cast<std::size_t>(j) * n + i] = d;
            total += 2.0 * d;
        }
    }
    const double mean = total / (static_cast<double>(n) * (n - 1));
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                out[static_cast<std::size_t>(i) * n + j] =
                    dist[static_cast<std::size_t>(i) * n + j] - mean;
            }
        }
    }
    return CoefficientMatrix(n, std::move(out), SymmetryClass::Symmetric, true);
}

} // namespace permcorr
