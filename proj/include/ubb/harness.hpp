#pragma once

/// @file harness.hpp
/// @brief Seeded trial batches, summaries, curve fits and file output.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ubb/algorithms.hpp"
#include "ubb/bounds.hpp"
#include "ubb/problems.hpp"

namespace ubb {

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::BinaryOneMax;
    ProblemClass cls = ProblemClass::OneMax;
    std::vector<std::size_t> n_values;
    /// Arity for kary_onemax; ignored otherwise.
    std::size_t k = 0;
    std::size_t trials = 1;
    std::uint64_t base_seed = 0;
    /// nullopt means default_budget(n).
    std::optional<std::uint64_t> budget;
    std::string output_path;
    std::size_t workers = 1;
    bool debug_instances = false;
};

/// Throws ConfigError on an unusable configuration.
void validate_config(const ExperimentConfig& cfg);

/// Seeds of one trial. The trial seed is base_seed + trial index; the instance
/// and algorithm streams are scrambled from it and from n.
struct TrialSeeds {
    std::uint64_t trial = 0;
    std::uint64_t instance = 0;
    std::uint64_t algorithm = 0;
};
TrialSeeds derive_seeds(std::uint64_t base_seed, std::size_t trial_index, std::size_t n);

/// trials x |n_values| runs, sorted by (position of n in n_values, trial).
/// RunRecord::seed holds the trial seed.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

struct SummaryRow {
    Algorithm algorithm = Algorithm::BinaryOneMax;
    ProblemClass cls = ProblemClass::OneMax;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t trials = 0;
    /// Statistics over successful runs; nullopt when there are none.
    std::optional<double> mean_queries;
    std::optional<double> std_queries;
    std::optional<double> median_queries;
    std::optional<double> min_queries;
    std::optional<double> max_queries;
    double success_rate = 0.0;
    std::optional<double> theory_value;
    std::optional<double> ratio;
};

/// Reference curve for an algorithm and class, if one applies.
std::optional<TheoryModel> theory_model_for(Algorithm a, ProblemClass cls);

/// One row per (algorithm, class, n, k) group, in order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

enum class FitModel { A_N, A_NLogN, A_NOverLogK };

std::string_view to_string(FitModel m) noexcept;
std::optional<FitModel> parse_fit_model(std::string_view name);

struct FitResult {
    FitModel model = FitModel::A_N;
    double a = 0.0;
    /// max over points of |mean - a g| / (a g)
    double residual = 0.0;
    std::size_t points = 0;
};

/// Least squares fit of mean queries to a * g over summary rows, where g is
/// n, n log n or n / log k. Needs at least 3 distinct x values (n, or k for
/// a_n_over_logk) with a defined mean; throws ContractViolation otherwise.
FitResult fit_curve(const std::vector<SummaryRow>& rows, FitModel model);
FitResult fit_curve(const std::vector<RunRecord>& records, FitModel model);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_runs_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
/// seed,n,hidden per run, regenerated from the trial seeds.
void write_instances_csv(std::ostream& out, const ExperimentConfig& cfg);

/// JSON text with summary rows, fits and theory overlays.
std::string report_json(const std::vector<SummaryRow>& rows, const std::vector<FitResult>& fits);

/// Writes runs.csv, summary.csv and report.json into dir (created if needed).
/// Throws IoError naming the path on failure.
void emit_report(const std::vector<RunRecord>& records, const std::vector<SummaryRow>& rows,
                 const std::vector<FitResult>& fits, const std::filesystem::path& dir);

std::vector<RunRecord> load_runs(const std::filesystem::path& file);

} // namespace ubb
