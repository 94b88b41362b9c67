#include "permcorr/statistics.hpp"

#include <cmath>
#include <stdexcept>

#include "permcorr/errors.hpp"
#include "permcorr/io.hpp"
#include "permcorr/rng.hpp"

namespace permcorr {

const char* to_string(Statistic s) {
    switch (s) {
        case Statistic::Wilcoxon: return "wilcoxon";
        case Statistic::EdgeCount: return "edge_count";
        case Statistic::Mmd: return "mmd";
        case Statistic::WeightedEdgeCount: return "weighted_edge_count";
        case Statistic::Pearson: return "pearson";
        case Statistic::Spearman: return "spearman";
        case Statistic::MantelCentered: return "mantel_centered";
        case Statistic::RawMatrices: return "raw_matrices";
    }
    return "raw_matrices";
}

Statistic parse_statistic(const std::string& name) {
    if (name == "wilcoxon") return Statistic::Wilcoxon;
    if (name == "edge_count") return Statistic::EdgeCount;
    if (name == "mmd") return Statistic::Mmd;
    if (name == "weighted_edge_count") return Statistic::WeightedEdgeCount;
    if (name == "pearson") return Statistic::Pearson;
    if (name == "spearman") return Statistic::Spearman;
    if (name == "mantel_centered") return Statistic::MantelCentered;
    if (name == "raw_matrices") return Statistic::RawMatrices;
    throw ConfigError("unknown statistic: " + name);
}

namespace {

const Sample& need_points(const StatisticInputs& inputs, const char* statistic) {
    if (!inputs.points) {
        throw ConfigError(std::string(statistic) + " needs a points file");
    }
    return *inputs.points;
}

const LabelVector& need_labels(const StatisticInputs& inputs, const char* statistic) {
    if (!inputs.labels) {
        throw ConfigError(std::string(statistic) + " needs a labels file");
    }
    return *inputs.labels;
}

std::vector<double> scalar_values(const Sample& points, const char* statistic) {
    if (points.dimension() != 1) {
        throw ConfigError(std::string(statistic) + " needs 1-column points (got " +
                          std::to_string(points.dimension()) + " columns)");
    }
    return column(points, 0);
}

// Paired 1-d samples arrive as a two-column points file.
std::pair<std::vector<double>, std::vector<double>> paired_columns(const Sample& points,
                                                                   const char* statistic) {
    if (points.dimension() != 2) {
        throw ConfigError(std::string(statistic) +
                          " needs a two-column points file (x in column 1, y in column 2)");
    }
    return {column(points, 0), column(points, 1)};
}

std::vector<double> label_values(const LabelVector& labels) {
    std::vector<double> values;
    values.reserve(labels.size());
    for (int v : labels.labels()) {
        values.push_back(static_cast<double>(v));
    }
    return values;
}

Sample column_sample(const std::vector<double>& values) {
    std::vector<std::vector<double>> points;
    points.reserve(values.size());
    for (double v : values) {
        points.push_back({v});
    }
    return Sample(std::move(points));
}

} // namespace

std::pair<CoefficientMatrix, CoefficientMatrix>
build_statistic_pair(Statistic statistic, const StatisticInputs& inputs,
                     const BuilderParams& params) {
    switch (statistic) {
        case Statistic::Wilcoxon: {
            const auto x = scalar_values(need_points(inputs, "wilcoxon"), "wilcoxon");
            const auto& labels = need_labels(inputs, "wilcoxon");
            return {sign_diff_matrix(x), sign_diff_matrix(label_values(labels))};
        }
        case Statistic::EdgeCount: {
            const auto& points = need_points(inputs, "edge_count");
            const auto& labels = need_labels(inputs, "edge_count");
            return {mst_adjacency(points), abs_label_diff(labels)};
        }
        case Statistic::Mmd: {
            const auto& points = need_points(inputs, "mmd");
            const auto& labels = need_labels(inputs, "mmd");
            return {kernel_matrix(points, params.bandwidth), mmd_label_matrix(labels)};
        }
        case Statistic::WeightedEdgeCount: {
            const auto& points = need_points(inputs, "weighted_edge_count");
            const auto& labels = need_labels(inputs, "weighted_edge_count");
            return {mst_adjacency(points),
                    weighted_label_matrix(labels, params.p_rule, params.explicit_p)};
        }
        case Statistic::Pearson: {
            const auto [x, y] = paired_columns(need_points(inputs, "pearson"), "pearson");
            return {diff_matrix(x), diff_matrix(y)};
        }
        case Statistic::Spearman: {
            const auto [x, y] = paired_columns(need_points(inputs, "spearman"), "spearman");
            return {rank_diff_matrix(x), rank_diff_matrix(y)};
        }
        case Statistic::MantelCentered: {
            const auto [x, y] =
                paired_columns(need_points(inputs, "mantel_centered"), "mantel_centered");
            return {centered_distance_matrix(column_sample(x)),
                    centered_distance_matrix(column_sample(y))};
        }
        case Statistic::RawMatrices: {
            if (!inputs.matrix_a || !inputs.matrix_b) {
                throw ConfigError("raw_matrices needs --matrix-a and --matrix-b");
            }
            if (inputs.matrix_a->order() != inputs.matrix_b->order()) {
                throw ConfigError("matrix orders differ");
            }
            return {*inputs.matrix_a, *inputs.matrix_b};
        }
    }
    throw ConfigError("unknown statistic");
}

std::pair<CoefficientMatrix, CoefficientMatrix>
build_synthetic_pair(Statistic statistic, int n, std::uint64_t data_seed,
                     const BuilderParams& params) {
    if (n < 4) {
        throw std::invalid_argument("synthetic data needs n >= 4");
    }
    // Stream roles: 0 = x coordinates, 1 = second sample (paired statistics).
    const std::uint64_t base = rng::fold(data_seed, static_cast<std::uint64_t>(n));
    auto normals = [&](int count, std::uint64_t role) {
        std::vector<double> values(count);
        const std::uint64_t stream_seed = rng::fold(base, role);
        for (int i = 0; i < count; ++i) {
            rng::SplitMix64 g = rng::stream(stream_seed, static_cast<std::uint64_t>(i));
            values[i] = rng::standard_normal(g);
        }
        return values;
    };
    auto balanced_labels = [&]() {
        std::vector<int> labels(n, 0);
        for (int i = n / 2; i < n; ++i) {
            labels[i] = 1;
        }
        return LabelVector(std::move(labels));
    };

    StatisticInputs inputs;
    switch (statistic) {
        case Statistic::Wilcoxon:
        case Statistic::EdgeCount:
        case Statistic::Mmd:
        case Statistic::WeightedEdgeCount:
            inputs.points = column_sample(normals(n, 0));
            inputs.labels = balanced_labels();
            break;
        case Statistic::Pearson:
        case Statistic::Spearman:
        case Statistic::MantelCentered: {
            const auto x = normals(n, 0);
            const auto y = normals(n, 1);
            std::vector<std::vector<double>> points;
            points.reserve(n);
            for (int i = 0; i < n; ++i) {
                points.push_back({x[i], y[i]});
            }
            inputs.points = Sample(std::move(points));
            break;
        }
        case Statistic::RawMatrices:
            throw ConfigError("raw_matrices has no synthetic data rule");
    }
    return build_statistic_pair(statistic, inputs, params);
}

std::vector<SweepRow> convergence_sweep(Statistic statistic, std::uint64_t data_seed,
                                        const BuilderParams& params,
                                        const std::vector<int>& n_values, std::int64_t draws,
                                        RngSeed seed, int workers) {
    std::vector<SweepRow> rows;
    rows.reserve(n_values.size());
    for (int n : n_values) {
        const auto [a, b] = build_synthetic_pair(statistic, n, data_seed, params);
        SweepRow row;
        row.n = n;
        bool degenerate = false;
        const double var = exact_variance(a, b, &degenerate);
        if (degenerate || var <= 0.0) {
            row.degenerate = true;
            rows.push_back(row);
            continue;
        }
        const NullDistribution dist = sample_null(a, b, draws, seed, workers);
        row.ks = ks_normal(dist, a, b, NormalizerKind::ExactSd);
        row.skewness = dist.skewness;
        row.excess_kurtosis = dist.excess_kurtosis;
        const double sd = std::sqrt(var);
        row.ratio_daniels = normalizer(a, b, NormalizerKind::Daniels) / sd;
        row.ratio_pham3 = normalizer(a, b, NormalizerKind::Pham3) / sd;
        rows.push_back(row);
    }
    return rows;
}

} // namespace permcorr
