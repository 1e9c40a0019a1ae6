#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grind/process_model.hpp"
#include "grind/scalarization.hpp"
#include "grind/solver.hpp"
#include "grind/topsis.hpp"

namespace grind {

inline constexpr const char* kVersion = "0.1.0";

/// Default criteria weighting for ranking the methods: 80% spread over the
/// three objective criteria, 20% on solve time.
CriteriaWeights default_criteria_weights();

/// The six methods in canonical comparison order.
std::vector<MethodSpec> default_method_set();

struct MethodRow {
    std::string method;     // display name
    std::string cli_method; // parseable method string
    std::optional<DecisionVector> dv;          // empty for Individual optimization
    ObjectiveTriple objectives{};
    std::optional<double> scalar_value;        // empty for Individual optimization
    std::optional<Direction> direction;
    bool feasible = false;
    bool truncated = false;
    double wall_time_s = 0.0;
    std::int64_t evaluations = 0;
};

struct TopsisBlock {
    DecisionMatrix matrix;
    CriteriaWeights weights;
    bool renormalized = false;
    TopsisResult result;
};

struct RunReport {
    std::string version = kVersion;
    std::uint64_t seed = 0;
    SolveOptions options{};
    ProcessConstants constants{};
    IdealPoint ideal{};
    std::vector<MethodRow> rows;
    std::optional<TopsisBlock> topsis;  // absent when fewer than 2 ranked rows
};

/// Builds the alternatives x (R_a, T, C_T, CPU-Time) cost matrix from the
/// scalarization rows (Individual optimization is excluded).
DecisionMatrix matrix_from_rows(const std::vector<MethodRow>& rows);

/// Runs ideal_point, then every requested method, then ranks the methods.
/// Infeasible methods are reported as flagged rows; the run continues.
RunReport run_experiment(const ProcessConstants& c, const std::vector<MethodSpec>& methods,
                         const SolveOptions& opts, const CriteriaWeights& weights,
                         bool renormalize_weights);

std::string report_to_json(const RunReport& r);
RunReport report_from_json(const std::string& text);

/// Decision matrix for a standalone ranking, from either a matrix CSV or a
/// comparison-report JSON (detected by content).
DecisionMatrix load_decision_matrix(const std::string& text);

std::string format_comparison_table(const RunReport& r);
std::string format_topsis_table(const std::vector<std::string>& alternatives,
                                const TopsisResult& t);

/// Writes comparison.csv, the four per-metric figure series, and (when the
/// report carries a ranking) decision_matrix.csv + topsis_result.csv.
void write_report_csvs(const RunReport& r, const std::string& dir);

}  // namespace grind
