#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permcorr/builders.hpp"
#include "permcorr/matrix.hpp"
#include "permcorr/null_dist.hpp"

namespace permcorr {

enum class Statistic {
    Wilcoxon,
    EdgeCount,
    Mmd,
    WeightedEdgeCount,
    Pearson,
    Spearman,
    MantelCentered,
    RawMatrices,
};

const char* to_string(Statistic s);
Statistic parse_statistic(const std::string& name);

struct BuilderParams {
    std::optional<double> bandwidth;          // nullopt = median rule
    WeightRule p_rule = WeightRule::MOverN;
    double explicit_p = 0.0;
};

struct StatisticInputs {
    std::optional<Sample> points;
    std::optional<LabelVector> labels;
    std::optional<CoefficientMatrix> matrix_a;
    std::optional<CoefficientMatrix> matrix_b;
};

// Builds the (a, b) coefficient pair for a statistic from raw data.
// Two-sample statistics need points + labels; pearson/spearman and
// mantel_centered read paired columns from a two-column points file;
// raw_matrices passes the matrices through.
std::pair<CoefficientMatrix, CoefficientMatrix>
build_statistic_pair(Statistic statistic, const StatisticInputs& inputs,
                     const BuilderParams& params);

// Synthetic data for sweeps and self-checks: standard normal coordinates and
// balanced labels, all derived from counter-based streams keyed on
// (data_seed, n), so a (statistic, n, data_seed) triple names one dataset.
std::pair<CoefficientMatrix, CoefficientMatrix>
build_synthetic_pair(Statistic statistic, int n, std::uint64_t data_seed,
                     const BuilderParams& params);

struct SweepRow {
    int n = 0;
    bool degenerate = false;
    std::optional<double> ks;               // exact-sd standardization
    std::optional<double> skewness;
    std::optional<double> excess_kurtosis;
    std::optional<double> ratio_daniels;    // daniels normalizer / exact sd
    std::optional<double> ratio_pham3;      // pham3 normalizer / exact sd
};

// One Monte Carlo run per sample size; trend assertions belong to callers.
std::vector<SweepRow> convergence_sweep(Statistic statistic, std::uint64_t data_seed,
                                        const BuilderParams& params,
                                        const std::vector<int>& n_values,
                                        std::int64_t draws, RngSeed seed, int workers = 1);

} // namespace permcorr
