#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "permcorr/conditions.hpp"
#include "permcorr/moments.hpp"
#include "permcorr/statistics.hpp"

namespace permcorr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Command { Test, Diagnose, Sweep, OracleCheck };
enum class OutputFormat { Json, Text };

struct RunConfig {
    Command command = Command::Test;
    Statistic statistic = Statistic::RawMatrices;
    std::string points_path;
    std::string labels_path;
    std::string matrix_a_path;
    std::string matrix_b_path;
    NormalizerKind normalizer = NormalizerKind::ExactSd;
    std::int64_t draws = 10000;
    std::uint64_t seed = 0;
    int exact_cap = kDefaultEnumerationCap;
    bool use_exact = false;       // enumerate instead of sampling (N <= cap)
    std::string p_rule = "m_over_n";
    std::string bandwidth = "median";
    std::string out_path;         // empty = stdout
    OutputFormat format = OutputFormat::Json;
    int workers = 1;
    bool strict = false;
    std::string dump_values_path; // raw null-distribution values as CSV
    // sweep
    std::vector<int> sweep_n_values;
    std::uint64_t data_seed = 1;
    // oracle-check
    int oracle_n = 5;
    int oracle_trials = 20;
    double oracle_tolerance = 1e-9;
};

struct RunOutcome {
    nlohmann::ordered_json report;
    bool degenerate = false; // exit 3 under --strict
    bool failed = false;     // oracle-check mismatch
};

RunOutcome run_test(const RunConfig& config);
RunOutcome run_diagnose(const RunConfig& config);
RunOutcome run_sweep(const RunConfig& config);
RunOutcome run_oracle_check(const RunConfig& config);

// Text rendering of the JSON report structure.
std::string render_text(const nlohmann::ordered_json& report);

// Serializes with stable key order; all numbers were rounded to 12
// significant digits when the report was built.
std::string to_output(const nlohmann::ordered_json& report, OutputFormat format);

// Report-building helpers shared by the run_* entry points.
nlohmann::ordered_json json_number(double x);                 // finite -> number, else "undefined"
nlohmann::ordered_json json_number(std::optional<double> x);
nlohmann::ordered_json moment_report_json(const MomentReport& r);
nlohmann::ordered_json condition_report_json(const ConditionReport& r);

} // namespace permcorr
