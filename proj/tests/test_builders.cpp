#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "permcorr/builders.hpp"
#include "permcorr/rng.hpp"

#include "oracles.hpp"

using namespace permcorr;

namespace {

Sample random_sample_2d(int n, std::uint64_t seed) {
    rng::SplitMix64 g = rng::stream(seed, 0);
    std::vector<std::vector<double>> points;
    points.reserve(n);
    for (int i = 0; i < n; ++i) {
        points.push_back({oracles::uniform_pm1(g), oracles::uniform_pm1(g)});
    }
    return Sample(std::move(points));
}

} // namespace

TEST_CASE("diff and sign-diff matrices") {
    const auto a = diff_matrix({1, 2, 3});
    CHECK(a(0, 1) == -1.0);
    CHECK(a(0, 2) == -2.0);
    CHECK(a(1, 2) == -1.0);
    CHECK(a.symmetry_class() == SymmetryClass::Antisymmetric);

    const auto constant = diff_matrix({4, 4, 4});
    for (double v : constant.data()) CHECK(v == 0.0);

    const auto s = sign_diff_matrix({1, 2, 3});
    CHECK(s(0, 2) == -1.0);
    CHECK(s(2, 0) == 1.0);
    const auto tied = sign_diff_matrix({1, 1});
    for (double v : tied.data()) CHECK(v == 0.0);
    const auto labels = sign_diff_matrix({0, 0, 1});
    CHECK(labels(0, 2) == -1.0);
    CHECK(labels(0, 1) == 0.0);

    SUBCASE("row sums of the difference matrix are N x_i - sum x") {
        rng::SplitMix64 g = rng::stream(3, 0);
        std::vector<double> x(7);
        for (double& v : x) v = oracles::uniform_pm1(g);
        double total = 0.0;
        for (double v : x) total += v;
        const auto d = diff_matrix(x);
        const auto sums = elementary_sums(d);
        for (int i = 0; i < 7; ++i) {
            CHECK(sums.row_sums[i] == doctest::Approx(7.0 * x[i] - total).epsilon(1e-12));
        }
    }
}

TEST_CASE("rank differences use midranks") {
    const auto a = rank_diff_matrix({10, 30, 20});
    CHECK(a(0, 1) == -2.0);
    const auto tied = rank_diff_matrix({5, 5});
    for (double v : tied.data()) CHECK(v == 0.0);

    SUBCASE("invariant under monotone transforms") {
        rng::SplitMix64 g = rng::stream(4, 0);
        std::vector<double> x(8), ex(8);
        for (int i = 0; i < 8; ++i) {
            x[i] = oracles::uniform_pm1(g);
            ex[i] = std::exp(x[i]);
        }
        CHECK(rank_diff_matrix(x).data() == rank_diff_matrix(ex).data());
    }
}

TEST_CASE("minimum spanning tree adjacency") {
    SUBCASE("sorted line") {
        const Sample pts({{0.0}, {1.0}, {3.0}});
        const auto a = mst_adjacency(pts);
        CHECK(a(0, 1) == 1.0);
        CHECK(a(1, 2) == 1.0);
        CHECK(a(0, 2) == 0.0);
    }
    SUBCASE("two points give a single edge") {
        const Sample pts({{0.0}, {5.0}});
        const auto a = mst_adjacency(pts);
        CHECK(elementary_sums(a).sum_offdiag == 2.0);
    }
    SUBCASE("random 2-d sample: spanning tree with Prim's weight") {
        const Sample pts = random_sample_2d(20, 99);
        const auto a = mst_adjacency(pts);
        int edges = 0;
        double weight = 0.0;
        for (int i = 0; i < 20; ++i) {
            for (int j = i + 1; j < 20; ++j) {
                if (a(i, j) == 1.0) {
                    ++edges;
                    double sq = 0.0;
                    for (int k = 0; k < 2; ++k) {
                        const double d = pts.point(i)[k] - pts.point(j)[k];
                        sq += d * d;
                    }
                    weight += std::sqrt(sq);
                }
            }
        }
        CHECK(edges == 19);
        CHECK(weight == doctest::Approx(oracles::prim_mst_weight(pts)).epsilon(1e-10));

        // Connectivity via union of accepted edges.
        std::vector<int> reach = {0};
        std::vector<bool> seen(20, false);
        seen[0] = true;
        for (std::size_t k = 0; k < reach.size(); ++k) {
            for (int v = 0; v < 20; ++v) {
                if (!seen[v] && a(reach[k], v) == 1.0) {
                    seen[v] = true;
                    reach.push_back(v);
                }
            }
        }
        CHECK(reach.size() == 20);
    }
    SUBCASE("duplicate points are allowed") {
        const Sample pts({{1.0, 1.0}, {1.0, 1.0}, {2.0, 2.0}});
        CHECK_NOTHROW((void)mst_adjacency(pts));
    }
    SUBCASE("deterministic on degenerate inputs") {
        const Sample grid({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
        const auto first = mst_adjacency(grid);
        const auto second = mst_adjacency(grid);
        CHECK(first.data() == second.data());
        // Ties broken toward low (min,max) index pairs: edges (1,2),(1,3),(2,4).
        CHECK(first(0, 1) == 1.0);
        CHECK(first(0, 2) == 1.0);
        CHECK(first(1, 3) == 1.0);
    }
}

TEST_CASE("gaussian kernel matrix") {
    SUBCASE("fixed bandwidth, distance sigma*sqrt(2) gives exp(-1)") {
        const double sigma = 0.8;
        const Sample pts({{0.0}, {sigma * std::sqrt(2.0)}});
        const auto k = kernel_matrix(pts, sigma);
        CHECK(k(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
        CHECK(k(0, 0) == 0.0);
    }
    SUBCASE("coincident pair has entry 1") {
        const Sample pts({{1.0}, {1.0}, {4.0}});
        const auto k = kernel_matrix(pts, 1.0);
        CHECK(k(0, 1) == 1.0);
    }
    SUBCASE("median bandwidth on (0, 1, 3)") {
        // Pairwise distances (1, 2, 3): median 2; exp(-1/8) at distance 1.
        const Sample pts({{0.0}, {1.0}, {3.0}});
        const auto k = kernel_matrix(pts, std::nullopt);
        CHECK(k(0, 1) == doctest::Approx(std::exp(-1.0 / 8.0)).epsilon(1e-14));
    }
    SUBCASE("median of an even count averages the central pair") {
        // Distances: (1, 2, 3, 1, 2, 1) sorted (1,1,1,2,2,3) -> median 1.5.
        const Sample pts({{0.0}, {1.0}, {2.0}, {3.0}});
        const auto k = kernel_matrix(pts, std::nullopt);
        CHECK(k(0, 1) == doctest::Approx(std::exp(-1.0 / (2.0 * 2.25))).epsilon(1e-14));
    }
    SUBCASE("all-identical points break the median rule") {
        const Sample pts({{2.0}, {2.0}, {2.0}});
        CHECK_THROWS_AS((void)kernel_matrix(pts, std::nullopt), std::invalid_argument);
    }
    SUBCASE("keep_diagonal restores the Gram diagonal") {
        const Sample pts({{0.0}, {1.0}});
        const auto k = kernel_matrix(pts, 1.0, true);
        CHECK(k(0, 0) == 1.0);
        CHECK_FALSE(k.hollow());
    }
}

TEST_CASE("mmd label matrix") {
    SUBCASE("balanced four") {
        const auto b = mmd_label_matrix(LabelVector({0, 0, 1, 1}));
        CHECK(b(0, 1) == 0.5);
        CHECK(b(2, 3) == 0.5);
        CHECK(b(0, 2) == -0.25);
        CHECK(elementary_sums(b).sum_offdiag == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("unbalanced five") {
        const auto b = mmd_label_matrix(LabelVector({0, 0, 0, 1, 1}));
        CHECK(b(0, 1) == doctest::Approx(1.0 / 6.0));
        CHECK(b(3, 4) == doctest::Approx(0.5));
        CHECK(b(0, 3) == doctest::Approx(-1.0 / 6.0));
        CHECK(std::fabs(elementary_sums(b).sum_offdiag) <= 1e-14);
    }
    SUBCASE("group of one is rejected") {
        CHECK_THROWS_AS((void)mmd_label_matrix(LabelVector({0, 1, 1})),
                        std::invalid_argument);
    }
}

TEST_CASE("weighted label matrix") {
    SUBCASE("p = m/N on (0,0,1)") {
        const auto b = weighted_label_matrix(LabelVector({0, 0, 1}), WeightRule::MOverN);
        CHECK(b(0, 1) == doctest::Approx(1.0 / 3.0));
        CHECK(b(2, 2) == doctest::Approx(2.0 / 3.0));
        CHECK(b(0, 2) == 0.0);
        CHECK_FALSE(b.hollow());
    }
    SUBCASE("p = 0 indicates both-in-group-0") {
        const auto b =
            weighted_label_matrix(LabelVector({0, 1, 0}), WeightRule::Explicit, 0.0);
        CHECK(b(0, 2) == 1.0);
        CHECK(b(0, 1) == 0.0);
        CHECK(b(1, 1) == 0.0);
    }
    SUBCASE("p rule (m-1)/(N-2) on a balanced four") {
        const auto b = weighted_label_matrix(LabelVector({0, 0, 1, 1}), WeightRule::M1OverN2);
        CHECK(b(0, 1) == doctest::Approx(0.5));
        CHECK(b(2, 3) == doctest::Approx(0.5));
        CHECK(b(0, 2) == 0.0);
    }
    SUBCASE("explicit p outside [0,1] is rejected") {
        CHECK_THROWS_AS(
            (void)weighted_label_matrix(LabelVector({0, 1}), WeightRule::Explicit, 1.5),
            std::invalid_argument);
    }
}

TEST_CASE("absolute label difference") {
    const auto b = abs_label_diff(LabelVector({0, 1}));
    CHECK(b(0, 1) == 1.0);
    CHECK(b(1, 0) == 1.0);
    CHECK_THROWS_AS(LabelVector({0, 0, 0}), std::invalid_argument);
    const auto b3 = abs_label_diff(LabelVector({0, 0, 1}));
    CHECK(elementary_sums(b3).sum_offdiag == 4.0);
}

TEST_CASE("centered distance matrix") {
    SUBCASE("two points center to zero") {
        const auto a = centered_distance_matrix(Sample({{0.0}, {7.0}}));
        CHECK(a(0, 1) == 0.0);
    }
    SUBCASE("points (0, 1, 3)") {
        const auto a = centered_distance_matrix(Sample({{0.0}, {1.0}, {3.0}}));
        CHECK(a(0, 1) == doctest::Approx(-1.0));
        CHECK(a(0, 2) == doctest::Approx(1.0));
        CHECK(a(1, 2) == doctest::Approx(0.0));
    }
    SUBCASE("zero total sum at scale") {
        const Sample pts = random_sample_2d(50, 123);
        const auto a = centered_distance_matrix(pts);
        const auto sums = elementary_sums(a);
        CHECK(std::fabs(sums.sum_offdiag) <= 1e-12 * 50 * 50 * a.max_abs());
        CHECK(a.symmetry_class() == SymmetryClass::Symmetric);
    }
}

TEST_CASE("builders are deterministic bitwise") {
    const Sample pts = random_sample_2d(15, 321);
    CHECK(mst_adjacency(pts).data() == mst_adjacency(pts).data());
    CHECK(kernel_matrix(pts, std::nullopt).data() == kernel_matrix(pts, std::nullopt).data());
    CHECK(centered_distance_matrix(pts).data() == centered_distance_matrix(pts).data());
}
