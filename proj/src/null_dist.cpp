#include "permcorr/null_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "permcorr/errors.hpp"
#include "permcorr/rng.hpp"
#include "permcorr/stats_util.hpp"

namespace permcorr {

const char* to_string(Sidedness s) {
    switch (s) {
        case Sidedness::Greater: return "greater";
        case Sidedness::Less: return "less";
        case Sidedness::TwoSided: return "two_sided";
    }
    return "two_sided";
}

namespace {

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

void check_enumerable(const CoefficientMatrix& a, const CoefficientMatrix& b, int cap) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("enumeration: matrix orders differ");
    }
    if (cap > kMaxEnumerationCap) {
        throw std::invalid_argument("enumeration cap may be raised to at most " +
                                    std::to_string(kMaxEnumerationCap));
    }
    const int n = a.order();
    if (n > cap) {
        throw std::invalid_argument("exact enumeration of N = " + std::to_string(n) +
                                    " needs " + std::to_string(factorial(n)) +
                                    " permutations; cap is N <= " + std::to_string(cap));
    }
}

double gamma_of_perm(const CoefficientMatrix& a, const CoefficientMatrix& b,
                     const std::vector<int>& p) {
    const int n = a.order();
    const double* ad = a.data().data();
    const double* bd = b.data().data();
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

void fill_summary(NullDistribution& dist) {
    const SummaryMoments s = summarize(dist.values);
    dist.mean = s.mean;
    dist.variance = s.variance;
    dist.skewness = s.skewness;
    dist.excess_kurtosis = s.excess_kurtosis;
}

} // namespace

NullDistribution enumerate_exact(const CoefficientMatrix& a, const CoefficientMatrix& b,
                                 int cap) {
    check_enumerable(a, b, cap);
    const int n = a.order();
    NullDistribution dist;
    dist.kind = DistributionKind::Exact;
    dist.n = n;
    dist.sample_count = factorial(n);
    dist.values.reserve(static_cast<std::size_t>(dist.sample_count));
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        dist.values.push_back(gamma_of_perm(a, b, p));
    } while (std::next_permutation(p.begin(), p.end()));
    fill_summary(dist);
    return dist;
}

double exact_moment(const CoefficientMatrix& a, const CoefficientMatrix& b, int order, int cap) {
    check_enumerable(a, b, cap);
    if (order < 1) {
        throw std::invalid_argument("moment order must be >= 1");
    }
    const int n = a.order();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    double total = 0.0;
    std::int64_t count = 0;
    do {
        const double g = gamma_of_perm(a, b, p);
        double power = g;
        for (int k = 1; k < order; ++k) {
            power *= g;
        }
        total += power;
        ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return total / static_cast<double>(count);
}

NullDistribution sample_null(const CoefficientMatrix& a, const CoefficientMatrix& b,
                             std::int64_t draws, RngSeed seed, int workers) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("sample_null: matrix orders differ");
    }
    if (draws < 1) {
        throw std::invalid_argument("sample_null: draws must be >= 1");
    }
    const int n = a.order();
    NullDistribution dist;
    dist.kind = DistributionKind::Empirical;
    dist.n = n;
    dist.sample_count = draws;
    dist.seed = seed.value;
    dist.values.assign(static_cast<std::size_t>(draws), 0.0);

    workers = std::clamp(workers, 1, 64);
    // Draw t is a pure function of (seed, t); stripes only split the work.
    auto run_range = [&](std::int64_t lo, std::int64_t hi) {
        std::vector<int> perm(n);
        for (std::int64_t t = lo; t < hi; ++t) {
            rng::SplitMix64 g = rng::stream(seed.value, static_cast<std::uint64_t>(t));
            rng::fill_random_permutation(perm, g);
            dist.values[static_cast<std::size_t>(t)] = gamma_of_perm(a, b, perm);
        }
    };
    if (workers == 1) {
        run_range(0, draws);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::int64_t stride = (draws + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::int64_t lo = w * stride;
            const std::int64_t hi = std::min(draws, lo + stride);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    fill_summary(dist);
    return dist;
}

double ks_normal(const NullDistribution& dist, const CoefficientMatrix& a,
                 const CoefficientMatrix& b, NormalizerKind kind) {
    if (dist.values.empty()) {
        throw std::invalid_argument("ks_normal: empty distribution");
    }
    const auto [min_it, max_it] = std::minmax_element(dist.values.begin(), dist.values.end());
    if (*min_it == *max_it) {
        throw DegenerateError("ks_normal: distribution is a point mass");
    }
    std::vector<double> standardized;
    standardized.reserve(dist.values.size());
    if (kind == NormalizerKind::ExactSd) {
        bool degenerate = false;
        const double var = exact_variance(a, b, &degenerate);
        if (degenerate || var <= 0.0) {
            throw DegenerateError("ks_normal: exact variance is degenerate");
        }
        const double mean = exact_mean(a, b);
        const double sd = std::sqrt(var);
        for (double v : dist.values) {
            standardized.push_back((v - mean) / sd);
        }
    } else {
        const double denom = normalizer(a, b, kind);
        if (denom <= 0.0) {
            throw DegenerateError("ks_normal: zero normalizer");
        }
        for (double v : dist.values) {
            standardized.push_back(v / denom);
        }
    }
    return ks_distance_to_standard_normal(std::move(standardized));
}

double p_value(const NullDistribution& dist, double gamma_obs, Sidedness sidedness) {
    if (dist.values.empty()) {
        throw std::invalid_argument("p_value: empty distribution");
    }
    std::int64_t ge = 0, le = 0;
    for (double v : dist.values) {
        if (v >= gamma_obs) ++ge;
        if (v <= gamma_obs) ++le;
    }
    const double count = static_cast<double>(dist.values.size());
    double greater, less;
    if (dist.kind == DistributionKind::Exact) {
        greater = static_cast<double>(ge) / count;
        less = static_cast<double>(le) / count;
    } else {
        greater = (1.0 + static_cast<double>(ge)) / (count + 1.0);
        less = (1.0 + static_cast<double>(le)) / (count + 1.0);
    }
    switch (sidedness) {
        case Sidedness::Greater: return greater;
        case Sidedness::Less: return less;
        case Sidedness::TwoSided: return std::min(1.0, 2.0 * std::min(greater, less));
    }
    throw std::invalid_argument("unknown sidedness");
}

} // namespace permcorr
