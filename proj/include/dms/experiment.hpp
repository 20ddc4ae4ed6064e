///
/// \file experiment.hpp
///
/// Experiment orchestration: solver x problem runs, front and metric files,
/// and profile emission.
///
/// Layout of an experiment directory:
///
///     config.txt                    snapshot of the effective configuration
///     fronts/<problem>__<variant>.txt
///     summaries.jsonl               one run summary per cell
///     reference/<problem>.txt       combined nondominated front per problem
///     metrics.jsonl                 one metric record per cell
///     profiles/<metric>.svg|.txt    performance profiles
///
#ifndef DMS_EXPERIMENT_HPP
#define DMS_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dms/metrics.hpp"
#include "dms/problems.hpp"
#include "dms/profiles.hpp"
#include "dms/solver.hpp"

namespace dms
{

enum class InitMode
{
    Center,
    Line,
    Random,
    Point,
};

struct ExperimentConfig
{
    std::vector<std::string> problems{"all"};
    std::vector<PruneMode> variants{PruneMode::Classic, PruneMode::PruneAdaptive};
    std::int64_t budget = 20000;
    std::uint64_t seed = 0;
    std::string output_dir = "dms-results";
    InitMode init_mode = InitMode::Center;
    Index init_count = 1;
    std::vector<double> init_point;
    std::optional<double> beta1;
    std::optional<double> beta2;
    std::optional<double> gamma;
    std::optional<double> initial_stepsize;
    double tau_max = 10.0;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

/// Applies one `key = value` setting; throws ConfigError on unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Flat `key = value` lines; '#' starts a comment.
ExperimentConfig read_config(std::istream& is, ExperimentConfig base = {});
ExperimentConfig read_config_file(const std::string& path, ExperimentConfig base = {});
void write_config(std::ostream& os, const ExperimentConfig& config);

/// Resolves "all" and validates ids; unknown ids raise ConfigError listing the
/// valid ones.
std::vector<const MooProblem*> resolve_problems(const std::vector<std::string>& ids);

std::vector<DecisionPoint> initial_points_for(const ExperimentConfig& config,
                                              const MooProblem& problem);

SolverConfig solver_config_for(const ExperimentConfig& config, PruneMode variant);

/// `id n p lower upper` per catalog problem.
void list_problems(std::ostream& os);

struct MetricRecord
{
    std::string problem;
    std::string solver;
    double purity = kMetricFailure;
    double gamma = kMetricFailure;
    double delta = kMetricFailure;
    double hypervolume = kMetricFailure;
    Index front_size = 0;

    double value(MetricKind kind) const;
};

void write_metric_records(std::ostream& os, const std::vector<MetricRecord>& records);
std::vector<MetricRecord> read_metric_records(std::istream& is);

///
/// Scores each labelled front against the combined reference front (or
/// `reference` when given). The hypervolume box spans the ideal point and
/// reference point of all inputs, reference included.
///
std::vector<MetricRecord>
score_fronts(const std::string& problem,
             const std::vector<std::pair<std::string, Eigen::MatrixXd>>& fronts,
             const std::optional<Eigen::MatrixXd>& reference = std::nullopt);

/// One profile table per metric, problems and solvers in first-seen order.
ProfileTable profile_table(const std::vector<MetricRecord>& records, MetricKind kind);

/// Writes `<dir>/<metric>.svg` and `<dir>/<metric>.txt` for the four metrics.
/// Metrics on which every cell failed are skipped; their names and the reason
/// are returned.
std::vector<std::string> emit_profiles(const std::vector<MetricRecord>& records,
                                       const std::filesystem::path& dir, double tau_max);

struct ExperimentOutcome
{
    std::filesystem::path directory;
    std::size_t cells = 0;
    std::vector<std::string> failures;
    std::vector<MetricRecord> metrics;
    std::vector<std::string> skipped_profiles;
};

/// Output directory after applying the DMS_OUTPUT_ROOT environment variable
/// to relative paths.
std::filesystem::path resolve_output_dir(const std::string& dir);

ExperimentOutcome run_experiment(const ExperimentConfig& config);

} // namespace dms

#endif /* DMS_EXPERIMENT_HPP */
