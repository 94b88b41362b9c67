#include "permcorr/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "permcorr/errors.hpp"
#include "permcorr/io.hpp"
#include "permcorr/null_dist.hpp"
#include "permcorr/rng.hpp"
#include "permcorr/stats_util.hpp"

namespace permcorr {

using nlohmann::ordered_json;

namespace {

constexpr int kReportDigits = 12;

WeightRule parse_p_rule(const std::string& rule, double* explicit_p) {
    if (rule == "m_over_n") return WeightRule::MOverN;
    if (rule == "m1_over_n2") return WeightRule::M1OverN2;
    char* end = nullptr;
    const double p = std::strtod(rule.c_str(), &end);
    if (end != rule.c_str() && *end == '\0') {
        *explicit_p = p;
        return WeightRule::Explicit;
    }
    throw ConfigError("p rule must be m_over_n, m1_over_n2, or a number in [0,1]");
}

std::optional<double> parse_bandwidth(const std::string& bandwidth) {
    if (bandwidth == "median") return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(bandwidth.c_str(), &end);
    if (end == bandwidth.c_str() || *end != '\0' || !(v > 0.0)) {
        throw ConfigError("bandwidth must be 'median' or a positive number");
    }
    return v;
}

BuilderParams builder_params(const RunConfig& config) {
    BuilderParams params;
    params.bandwidth = parse_bandwidth(config.bandwidth);
    params.p_rule = parse_p_rule(config.p_rule, &params.explicit_p);
    return params;
}

StatisticInputs load_inputs(const RunConfig& config) {
    StatisticInputs inputs;
    if (!config.points_path.empty()) inputs.points = read_points_csv(config.points_path);
    if (!config.labels_path.empty()) inputs.labels = read_labels_csv(config.labels_path);
    if (!config.matrix_a_path.empty()) inputs.matrix_a = read_matrix_csv(config.matrix_a_path);
    if (!config.matrix_b_path.empty()) inputs.matrix_b = read_matrix_csv(config.matrix_b_path);
    return inputs;
}

// The echo carries the statistical configuration only; execution details
// (worker count, output paths) cannot change any reported number and are
// left out so reruns compare byte-identical.
ordered_json config_echo(const RunConfig& config) {
    ordered_json echo;
    echo["statistic"] = to_string(config.statistic);
    echo["points"] = config.points_path;
    echo["labels"] = config.labels_path;
    echo["matrix_a"] = config.matrix_a_path;
    echo["matrix_b"] = config.matrix_b_path;
    echo["normalizer"] = to_string(config.normalizer);
    echo["draws"] = config.draws;
    echo["seed"] = config.seed;
    echo["exact_cap"] = config.exact_cap;
    echo["exact"] = config.use_exact;
    echo["p_rule"] = config.p_rule;
    echo["bandwidth"] = config.bandwidth;
    return echo;
}

ordered_json report_shell(const RunConfig& config, const char* command) {
    ordered_json report;
    report["schema_version"] = kSchemaVersion;
    report["tool_version"] = kToolVersion;
    report["command"] = command;
    report["config"] = config_echo(config);
    return report;
}

ordered_json null_distribution_json(const NullDistribution& dist) {
    ordered_json j;
    j["kind"] = dist.kind == DistributionKind::Exact ? "exact" : "empirical";
    j["n"] = dist.n;
    j["sample_count"] = dist.sample_count;
    if (dist.seed.has_value()) {
        j["seed"] = *dist.seed;
    }
    j["mean"] = json_number(dist.mean);
    j["variance"] = json_number(dist.variance);
    j["skewness"] = json_number(dist.skewness);
    j["excess_kurtosis"] = json_number(dist.excess_kurtosis);
    return j;
}

TheoremId matching_theorem(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    const bool both_antisymmetric = a.symmetry_class() == SymmetryClass::Antisymmetric &&
                                    b.symmetry_class() == SymmetryClass::Antisymmetric;
    return both_antisymmetric ? TheoremId::Daniels : TheoremId::Main;
}

void dump_values_csv(const std::string& path, const NullDistribution& dist) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out.precision(17);
    out << "# gamma values under the permutation null\n";
    for (double v : dist.values) {
        out << v << '\n';
    }
}

double wall_seconds(std::chrono::steady_clock::time_point start) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    return std::chrono::duration<double>(elapsed).count();
}

} // namespace

ordered_json json_number(double x) {
    if (!std::isfinite(x)) {
        return "undefined";
    }
    return round_sig(x, kReportDigits);
}

ordered_json json_number(std::optional<double> x) {
    if (!x.has_value()) {
        return "undefined";
    }
    return json_number(*x);
}

ordered_json moment_report_json(const MomentReport& r) {
    ordered_json j;
    j["mean"] = json_number(r.mean);
    j["second_moment"] = json_number(r.second_moment);
    j["variance"] = json_number(r.variance);
    j["normalizer_daniels"] = json_number(r.normalizer_daniels);
    j["normalizer_pham2"] = json_number(r.normalizer_pham2);
    j["normalizer_pham3"] = json_number(r.normalizer_pham3);
    j["degenerate"] = r.degenerate;
    return j;
}

ordered_json condition_report_json(const ConditionReport& r) {
    ordered_json j;
    j["theorem"] = to_string(r.theorem);
    ordered_json checks;
    for (const auto& [name, value] : r.structural_checks) {
        checks[name] = value;
    }
    j["structural_checks"] = checks;
    ordered_json ratios;
    for (const auto& [name, value] : r.ratio_diagnostics) {
        ratios[name] = json_number(value);
    }
    j["ratio_diagnostics"] = ratios;
    j["advisory"] = r.advisory;
    return j;
}

RunOutcome run_test(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const StatisticInputs inputs = load_inputs(config);
    const auto [a, b] = build_statistic_pair(config.statistic, inputs, builder_params(config));
    const int n = a.order();

    RunOutcome outcome;
    ordered_json& report = outcome.report;
    report = report_shell(config, "test");
    report["n"] = n;

    const double gamma_obs = gamma_statistic(a, b, Permutation::identity(n));
    report["gamma_observed"] = json_number(gamma_obs);

    const MomentReport moments = moment_report(a, b);
    report["moments"] = moment_report_json(moments);
    outcome.degenerate = moments.degenerate;

    ordered_json standardized;
    std::optional<double> configured_z;
    for (NormalizerKind kind : {NormalizerKind::ExactSd, NormalizerKind::Daniels,
                                NormalizerKind::Pham2, NormalizerKind::Pham3}) {
        std::optional<double> z;
        try {
            z = standardize(gamma_obs, a, b, kind);
        } catch (const DegenerateError&) {
            outcome.degenerate = true;
        } catch (const std::invalid_argument&) {
            // No closed-form variance route for this input pair.
        }
        standardized[to_string(kind)] = json_number(z);
        if (kind == config.normalizer) {
            configured_z = z;
        }
    }
    report["standardized"] = standardized;

    NullDistribution dist =
        config.use_exact
            ? enumerate_exact(a, b, config.exact_cap)
            : sample_null(a, b, config.draws, RngSeed{config.seed}, config.workers);

    ordered_json p_values;
    ordered_json normal_approx;
    // Normal approximation under the configured normalizer.
    if (configured_z.has_value()) {
        const double z = *configured_z;
        normal_approx["greater"] = json_number(1.0 - normal_cdf(z));
        normal_approx["less"] = json_number(normal_cdf(z));
        normal_approx["two_sided"] =
            json_number(std::min(1.0, 2.0 * std::min(normal_cdf(z), 1.0 - normal_cdf(z))));
    } else {
        normal_approx["greater"] = "undefined";
        normal_approx["less"] = "undefined";
        normal_approx["two_sided"] = "undefined";
    }
    p_values["normal_approximation"] = normal_approx;

    ordered_json permutation;
    permutation["greater"] = json_number(p_value(dist, gamma_obs, Sidedness::Greater));
    permutation["less"] = json_number(p_value(dist, gamma_obs, Sidedness::Less));
    permutation["two_sided"] = json_number(p_value(dist, gamma_obs, Sidedness::TwoSided));
    p_values["permutation"] = permutation;
    report["p_values"] = p_values;

    report["null_distribution"] = null_distribution_json(dist);
    report["condition_report"] = condition_report_json(diagnose(a, b, matching_theorem(a, b)));

    if (!config.dump_values_path.empty()) {
        dump_values_csv(config.dump_values_path, dist);
    }

    report["wall_clock_seconds"] = wall_seconds(start);
    return outcome;
}

RunOutcome run_diagnose(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const StatisticInputs inputs = load_inputs(config);
    const auto [a, b] = build_statistic_pair(config.statistic, inputs, builder_params(config));

    RunOutcome outcome;
    ordered_json& report = outcome.report;
    report = report_shell(config, "diagnose");
    report["n"] = a.order();
    report["a_symmetry_class"] = to_string(a.symmetry_class());
    report["b_symmetry_class"] = to_string(b.symmetry_class());

    // Every theorem whose structural symmetry prerequisite matches, plus the
    // normalizers.
    const bool both_symmetric = a.symmetry_class() == SymmetryClass::Symmetric &&
                                b.symmetry_class() == SymmetryClass::Symmetric;
    const bool both_antisymmetric = a.symmetry_class() == SymmetryClass::Antisymmetric &&
                                    b.symmetry_class() == SymmetryClass::Antisymmetric;
    std::vector<TheoremId> theorems;
    if (both_antisymmetric) {
        theorems = {TheoremId::Daniels, TheoremId::Pham1, TheoremId::Pham2, TheoremId::Pham3};
    } else if (both_symmetric) {
        theorems = {TheoremId::Pham1, TheoremId::Pham2, TheoremId::Pham3, TheoremId::Main};
    } else {
        theorems = {TheoremId::Daniels, TheoremId::Pham1, TheoremId::Pham2, TheoremId::Pham3,
                    TheoremId::Main};
    }
    ordered_json reports = ordered_json::array();
    for (TheoremId id : theorems) {
        reports.push_back(condition_report_json(diagnose(a, b, id)));
    }
    report["condition_reports"] = reports;

    const MomentReport moments = moment_report(a, b);
    report["moments"] = moment_report_json(moments);
    outcome.degenerate = moments.degenerate;

    report["wall_clock_seconds"] = wall_seconds(start);
    return outcome;
}

RunOutcome run_sweep(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (config.sweep_n_values.empty()) {
        throw ConfigError("sweep needs --n-values");
    }
    if (config.statistic == Statistic::RawMatrices) {
        throw ConfigError("sweep needs a data-generating statistic, not raw_matrices");
    }
    const std::vector<SweepRow> rows =
        convergence_sweep(config.statistic, config.data_seed, builder_params(config),
                          config.sweep_n_values, config.draws, RngSeed{config.seed},
                          config.workers);

    RunOutcome outcome;
    ordered_json& report = outcome.report;
    report = report_shell(config, "sweep");
    report["data_seed"] = config.data_seed;
    ordered_json table = ordered_json::array();
    for (const SweepRow& row : rows) {
        ordered_json r;
        r["n"] = row.n;
        r["degenerate"] = row.degenerate;
        r["ks"] = json_number(row.ks);
        r["skewness"] = json_number(row.skewness);
        r["excess_kurtosis"] = json_number(row.excess_kurtosis);
        r["ratio_daniels_over_exact_sd"] = json_number(row.ratio_daniels);
        r["ratio_pham3_over_exact_sd"] = json_number(row.ratio_pham3);
        table.push_back(r);
        outcome.degenerate = outcome.degenerate || row.degenerate;
    }
    report["rows"] = table;
    report["wall_clock_seconds"] = wall_seconds(start);
    return outcome;
}

RunOutcome run_oracle_check(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const int n = config.oracle_n;
    if (n > config.exact_cap) {
        throw ConfigError("oracle-check at N = " + std::to_string(n) +
                          " exceeds the enumeration cap " + std::to_string(config.exact_cap));
    }

    double max_rel_error = 0.0;
    int comparisons = 0;
    auto compare = [&](const CoefficientMatrix& a, const CoefficientMatrix& b) {
        const double mean_formula = exact_mean(a, b);
        const double second_formula = exact_second_moment(a, b);
        const double mean_enum = exact_moment(a, b, 1, config.exact_cap);
        const double second_enum = exact_moment(a, b, 2, config.exact_cap);
        const double scale1 = std::max(std::fabs(mean_enum), 1.0);
        const double scale2 = std::max(std::fabs(second_enum), 1.0);
        max_rel_error = std::max(max_rel_error, std::fabs(mean_formula - mean_enum) / scale1);
        max_rel_error =
            std::max(max_rel_error, std::fabs(second_formula - second_enum) / scale2);
        comparisons += 2;
    };

    // Configured inputs first, when both matrices are given.
    if (!config.matrix_a_path.empty() && !config.matrix_b_path.empty()) {
        const StatisticInputs inputs = load_inputs(config);
        compare(*inputs.matrix_a, *inputs.matrix_b);
    }
    for (int trial = 0; trial < config.oracle_trials; ++trial) {
        auto random_symmetric_hollow = [&](std::uint64_t role) {
            std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
            const std::uint64_t stream_seed =
                rng::fold(rng::fold(config.seed, static_cast<std::uint64_t>(trial)), role);
            rng::SplitMix64 g = rng::stream(stream_seed, 0);
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const double v = 2.0 * rng::to_unit_open(g.next()) - 1.0;
                    entries[static_cast<std::size_t>(i) * n + j] = v;
                    entries[static_cast<std::size_t>(j) * n + i] = v;
                }
            }
            return CoefficientMatrix(n, std::move(entries), SymmetryClass::Symmetric, true);
        };
        compare(random_symmetric_hollow(0), random_symmetric_hollow(1));
    }

    RunOutcome outcome;
    outcome.failed = !(max_rel_error <= config.oracle_tolerance);
    ordered_json& report = outcome.report;
    report = report_shell(config, "oracle-check");
    report["n"] = n;
    report["trials"] = config.oracle_trials;
    report["comparisons"] = comparisons;
    report["max_relative_error"] = json_number(max_rel_error);
    report["tolerance"] = json_number(config.oracle_tolerance);
    report["passed"] = !outcome.failed;
    report["wall_clock_seconds"] = wall_seconds(start);
    return outcome;
}

namespace {

void render_value(std::ostringstream& out, const ordered_json& value, int indent);

void render_object(std::ostringstream& out, const ordered_json& obj, int indent) {
    for (const auto& [key, value] : obj.items()) {
        out << std::string(indent, ' ') << key << ":";
        if (value.is_object() || value.is_array()) {
            out << '\n';
            render_value(out, value, indent + 2);
        } else {
            out << ' ' << value.dump() << '\n';
        }
    }
}

void render_value(std::ostringstream& out, const ordered_json& value, int indent) {
    if (value.is_object()) {
        render_object(out, value, indent);
    } else if (value.is_array()) {
        for (const auto& item : value) {
            out << std::string(indent, ' ') << "-\n";
            render_value(out, item, indent + 2);
        }
    } else {
        out << std::string(indent, ' ') << value.dump() << '\n';
    }
}

} // namespace

std::string render_text(const ordered_json& report) {
    std::ostringstream out;
    render_object(out, report, 0);
    return out.str();
}

std::string to_output(const ordered_json& report, OutputFormat format) {
    if (format == OutputFormat::Text) {
        return render_text(report);
    }
    return report.dump(2) + "\n";
}

} // namespace permcorr
