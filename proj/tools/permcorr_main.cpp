#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "permcorr/errors.hpp"
#include "permcorr/io.hpp"
#include "permcorr/report.hpp"

namespace {

using permcorr::RunConfig;

// Exit codes: 0 ok, 1 usage/config, 2 I/O, 3 numerical degeneracy (strict
// runs and failed oracle checks).
enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2, kDegenerate = 3 };

void add_shared_options(CLI::App* cmd, RunConfig& config, std::string& statistic,
                        std::string& normalizer, std::string& format) {
    cmd->add_option("--points", config.points_path, "points CSV (one point per row)");
    cmd->add_option("--labels", config.labels_path, "labels CSV (one 0/1 per row)");
    cmd->add_option("--matrix-a", config.matrix_a_path, "coefficient matrix a, CSV");
    cmd->add_option("--matrix-b", config.matrix_b_path, "coefficient matrix b, CSV");
    cmd->add_option("--statistic", statistic,
                    "wilcoxon|edge_count|mmd|weighted_edge_count|pearson|spearman|"
                    "mantel_centered|raw_matrices");
    cmd->add_option("--normalizer", normalizer, "exact_sd|daniels|pham2|pham3")
        ->default_val("exact_sd");
    cmd->add_option("--draws", config.draws, "Monte Carlo draws")->default_val(10000);
    cmd->add_option("--seed", config.seed, "RNG seed")->default_val(0);
    cmd->add_option("--exact-cap", config.exact_cap,
                    "max N for exact enumeration (at most 9)")
        ->default_val(permcorr::kDefaultEnumerationCap);
    cmd->add_flag("--exact", config.use_exact, "enumerate all N! permutations");
    cmd->add_option("--p-rule", config.p_rule,
                    "m_over_n, m1_over_n2, or an explicit p in [0,1]")
        ->default_val("m_over_n");
    cmd->add_option("--bandwidth", config.bandwidth, "kernel bandwidth, or 'median'")
        ->default_val("median");
    cmd->add_option("--out", config.out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "json|text")->default_val("json");
    cmd->add_option("--workers", config.workers, "Monte Carlo worker threads")
        ->default_val(1);
    cmd->add_flag("--strict", config.strict, "treat numerical degeneracy as failure");
    cmd->add_option("--dump-values", config.dump_values_path,
                    "write raw null-distribution values to this CSV");
    cmd->set_config("--config", "", "key=value config file; flags win on conflict");
}

permcorr::NormalizerKind parse_normalizer(const std::string& name) {
    if (name == "exact_sd") return permcorr::NormalizerKind::ExactSd;
    if (name == "daniels") return permcorr::NormalizerKind::Daniels;
    if (name == "pham2") return permcorr::NormalizerKind::Pham2;
    if (name == "pham3") return permcorr::NormalizerKind::Pham3;
    throw permcorr::ConfigError("unknown normalizer: " + name);
}

permcorr::OutputFormat parse_format(const std::string& name) {
    if (name == "json") return permcorr::OutputFormat::Json;
    if (name == "text") return permcorr::OutputFormat::Text;
    throw permcorr::ConfigError("unknown format: " + name);
}

void emit(const permcorr::RunConfig& config, const nlohmann::ordered_json& report) {
    const std::string text = permcorr::to_output(report, config.format);
    if (config.out_path.empty()) {
        std::cout << text;
    } else {
        permcorr::write_text_file(config.out_path, text);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutation inference for generalized correlation coefficients"};
    app.set_version_flag("--version", std::string("permcorr ") + permcorr::kToolVersion);
    app.require_subcommand(1);

    RunConfig config;
    std::string statistic = "raw_matrices";
    std::string normalizer = "exact_sd";
    std::string format = "json";
    std::string n_values_csv;

    CLI::App* test = app.add_subcommand("test", "run one permutation test end to end");
    add_shared_options(test, config, statistic, normalizer, format);

    CLI::App* diagnose = app.add_subcommand("diagnose", "theorem condition diagnostics");
    add_shared_options(diagnose, config, statistic, normalizer, format);

    CLI::App* sweep = app.add_subcommand("sweep", "normality trend over sample sizes");
    add_shared_options(sweep, config, statistic, normalizer, format);
    sweep->add_option("--n-values", n_values_csv, "comma-separated sample sizes")->required();
    sweep->add_option("--data-seed", config.data_seed, "seed for synthetic data")
        ->default_val(1);

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "closed-form moments vs full enumeration");
    add_shared_options(oracle, config, statistic, normalizer, format);
    oracle->add_option("--n", config.oracle_n, "matrix order for random trials")
        ->default_val(5);
    oracle->add_option("--trials", config.oracle_trials, "random matrix pairs")
        ->default_val(20);
    oracle->add_option("--tolerance", config.oracle_tolerance, "max relative error")
        ->default_val(1e-9);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        config.statistic = permcorr::parse_statistic(statistic);
        config.normalizer = parse_normalizer(normalizer);
        config.format = parse_format(format);
        if (config.draws < 1) {
            throw permcorr::ConfigError("--draws must be at least 1");
        }
        if (config.workers < 1) {
            throw permcorr::ConfigError("--workers must be at least 1");
        }
        if (config.exact_cap < 2 || config.exact_cap > permcorr::kMaxEnumerationCap) {
            throw permcorr::ConfigError("--exact-cap must lie in 2.." +
                                        std::to_string(permcorr::kMaxEnumerationCap));
        }

        permcorr::RunOutcome outcome;
        if (test->parsed()) {
            config.command = permcorr::Command::Test;
            outcome = permcorr::run_test(config);
        } else if (diagnose->parsed()) {
            config.command = permcorr::Command::Diagnose;
            outcome = permcorr::run_diagnose(config);
        } else if (sweep->parsed()) {
            config.command = permcorr::Command::Sweep;
            for (const auto& field : CLI::detail::split(n_values_csv, ',')) {
                config.sweep_n_values.push_back(std::stoi(field));
            }
            outcome = permcorr::run_sweep(config);
        } else {
            config.command = permcorr::Command::OracleCheck;
            outcome = permcorr::run_oracle_check(config);
        }

        emit(config, outcome.report);
        if (outcome.failed) {
            std::cerr << "oracle-check failed: max relative error above tolerance\n";
            return kDegenerate;
        }
        if (outcome.degenerate && config.strict) {
            std::cerr << "degenerate permutation distribution (strict mode)\n";
            return kDegenerate;
        }
        return kOk;
    } catch (const permcorr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const permcorr::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const permcorr::DegenerateError& e) {
        std::cerr << "degenerate statistic: " << e.what() << '\n';
        return kDegenerate;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
