#pragma once

// Independent reference implementations used only as test oracles. These
// deliberately stay naive (explicit loops, explicit distinctness checks) and
// share no code with the kernels they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "permcorr/builders.hpp"
#include "permcorr/matrix.hpp"
#include "permcorr/rng.hpp"

namespace oracles {

using permcorr::CoefficientMatrix;

inline double naive_gamma(const CoefficientMatrix& a, const CoefficientMatrix& b,
                          const std::vector<int>& p) {
    double total = 0.0;
    for (int i = 0; i < a.order(); ++i) {
        for (int j = 0; j < a.order(); ++j) {
            total += a(i, j) * b(p[i], p[j]);
        }
    }
    return total;
}

inline double naive_triple_sum(const CoefficientMatrix& a) {
    double total = 0.0;
    for (int i = 0; i < a.order(); ++i) {
        for (int j = 0; j < a.order(); ++j) {
            for (int k = 0; k < a.order(); ++k) {
                total += a(i, j) * a(i, k);
            }
        }
    }
    return total;
}

inline double naive_restricted_sum(const CoefficientMatrix& a,
                                   permcorr::DistinctSumPattern pattern) {
    using permcorr::DistinctSumPattern;
    const int n = a.order();
    double total = 0.0;
    switch (pattern) {
        case DistinctSumPattern::P4:
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int s = 0; s < n; ++s)
                        for (int u = 0; u < n; ++u)
                            if (j != k && j != s && j != u && k != s && k != u && s != u)
                                total += a(j, k) * a(s, u);
            break;
        case DistinctSumPattern::P3Shared:
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int u = 0; u < n; ++u)
                        if (j != k && j != u && k != u) total += a(j, k) * a(j, u);
            break;
        case DistinctSumPattern::P3Diag:
            for (int j = 0; j < n; ++j)
                for (int s = 0; s < n; ++s)
                    for (int u = 0; u < n; ++u)
                        if (j != s && j != u && s != u) total += a(j, j) * a(s, u);
            break;
        case DistinctSumPattern::P2Sq:
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (j != k) total += a(j, k) * a(j, k);
            break;
        case DistinctSumPattern::P2DiagPair:
            for (int j = 0; j < n; ++j)
                for (int s = 0; s < n; ++s)
                    if (j != s) total += a(j, j) * a(s, s);
            break;
        case DistinctSumPattern::P2Mixed:
            for (int j = 0; j < n; ++j)
                for (int u = 0; u < n; ++u)
                    if (j != u) total += a(j, j) * a(j, u);
            break;
        case DistinctSumPattern::P1:
            for (int j = 0; j < n; ++j) total += a(j, j) * a(j, j);
            break;
    }
    return total;
}

// Prim's algorithm; returns the total MST edge weight.
inline double prim_mst_weight(const permcorr::Sample& sample) {
    const int n = sample.size();
    auto dist = [&](int i, int j) {
        double sq = 0.0;
        for (int k = 0; k < sample.dimension(); ++k) {
            const double d = sample.point(i)[k] - sample.point(j)[k];
            sq += d * d;
        }
        return std::sqrt(sq);
    };
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    best[0] = 0.0;
    double total = 0.0;
    for (int step = 0; step < n; ++step) {
        int next = -1;
        for (int v = 0; v < n; ++v) {
            if (!in_tree[v] && (next == -1 || best[v] < best[next])) next = v;
        }
        in_tree[next] = true;
        total += best[next];
        for (int v = 0; v < n; ++v) {
            if (!in_tree[v]) best[v] = std::min(best[v], dist(next, v));
        }
    }
    return total;
}

// Deterministic random matrices for tests.

inline double uniform_pm1(permcorr::rng::SplitMix64& g) {
    return 2.0 * permcorr::rng::to_unit_open(g.next()) - 1.0;
}

inline CoefficientMatrix random_general(int n, std::uint64_t seed) {
    permcorr::rng::SplitMix64 g = permcorr::rng::stream(seed, 0);
    std::vector<double> entries(static_cast<std::size_t>(n) * n);
    for (auto& v : entries) v = uniform_pm1(g);
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::General, false);
}

inline CoefficientMatrix random_symmetric_hollow(int n, std::uint64_t seed) {
    permcorr::rng::SplitMix64 g = permcorr::rng::stream(seed, 0);
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = uniform_pm1(g);
            entries[static_cast<std::size_t>(i) * n + j] = v;
            entries[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::Symmetric, true);
}

inline CoefficientMatrix random_antisymmetric(int n, std::uint64_t seed) {
    permcorr::rng::SplitMix64 g = permcorr::rng::stream(seed, 0);
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = uniform_pm1(g);
            entries[static_cast<std::size_t>(i) * n + j] = v;
            entries[static_cast<std::size_t>(j) * n + i] = -v;
        }
    }
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::Antisymmetric,
                             true);
}

inline CoefficientMatrix random_general_hollow(int n, std::uint64_t seed) {
    permcorr::rng::SplitMix64 g = permcorr::rng::stream(seed, 0);
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) entries[static_cast<std::size_t>(i) * n + j] = uniform_pm1(g);
        }
    }
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::General, true);
}

// Symmetric hollow with the off-diagonal grand mean removed.
inline CoefficientMatrix random_centered_symmetric_hollow(int n, std::uint64_t seed) {
    const CoefficientMatrix raw = random_symmetric_hollow(n, seed);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) mean += raw(i, j);
        }
    }
    mean /= static_cast<double>(n) * (n - 1);
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) entries[static_cast<std::size_t>(i) * n + j] = raw(i, j) - mean;
        }
    }
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::Symmetric, true);
}

// K_n adjacency: all ones off the diagonal.
inline CoefficientMatrix complete_graph(int n) {
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 1.0);
    for (int i = 0; i < n; ++i) entries[static_cast<std::size_t>(i) * n + i] = 0.0;
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::Symmetric, true);
}

// Single symmetric nonzero pair at (1,2) (1-based), hollow.
inline CoefficientMatrix pair_matrix(int n) {
    std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
    entries[1] = 1.0;
    entries[n] = 1.0;
    return CoefficientMatrix(n, std::move(entries), permcorr::SymmetryClass::Symmetric, true);
}

} // namespace oracles
