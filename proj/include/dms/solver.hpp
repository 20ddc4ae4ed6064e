///
/// \file solver.hpp
///
/// Direct MultiSearch with complete polling over the coordinate positive
/// spanning set, optionally pruned with first-order information.
///
#ifndef DMS_SOLVER_HPP
#define DMS_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dms/core.hpp"
#include "dms/problems.hpp"

namespace dms
{

struct ConfigError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

///
/// Poll directions stored as the columns of an `n x r` matrix.
///
struct PollDirections
{
    Eigen::MatrixXd directions;
    /// Set when the columns are known to positively span R^n.
    bool positive_spanning = false;

    Index dimension() const
    {
        return directions.rows();
    }
    Index size() const
    {
        return directions.cols();
    }
    bool empty() const
    {
        return directions.cols() == 0;
    }
};

/// The maximal coordinate set [I, -I].
PollDirections generate_pss(Index n);

///
/// Keeps the directions that are strict descent directions for at least one
/// objective: d with -grad(f_i)^T d > 0 for some i. `gradients` holds one
/// gradient per column. Column order of `D` is preserved; the result may be
/// empty when every gradient vanishes.
///
PollDirections prune(const PollDirections& D, const Jacobian& gradients);

enum class PruneMode
{
    Classic,
    PruneAlways,
    PruneAdaptive,
};

std::string_view to_string(PruneMode mode);
/// Accepts "classic", "prune-always", "prune-adaptive" (throws ConfigError).
PruneMode parse_prune_mode(std::string_view name);

struct SolverConfig
{
    double beta1 = 0.5;
    double beta2 = 0.5;
    double gamma = 1.0;
    /// Defaults to 0.1 * max_i (u_i - l_i) when unset.
    std::optional<double> initial_stepsize;
    std::int64_t max_evaluations = 20000;
    PruneMode prune_mode = PruneMode::Classic;
    std::uint64_t seed = 0;
    /// Entries whose stepsize falls below this are no longer poll centers;
    /// the run ends early when no entry qualifies.
    double stepsize_tolerance = 1e-9;

    /// Throws ConfigError on out-of-range constants.
    void validate() const;
};

/// Entry with the largest distance to its nearest neighbour in objective
/// space, among entries with stepsize >= `min_stepsize`. Entries with an
/// identical objective vector are not neighbours. Ties go to the lowest
/// index. Returns nullopt when no entry qualifies; throws StateError when
/// the archive is empty.
std::optional<std::size_t> select_poll_center(const Archive& archive,
                                              double min_stepsize = 0.0);

struct PollOutcome
{
    Archive archive;
    bool success = false;
    std::int64_t evaluations = 0;
    bool all_infeasible = false;
    /// Budget ran out before every feasible poll point was evaluated.
    bool incomplete = false;
    /// Accepted poll points, appended at the tail of `archive`.
    std::size_t new_count = 0;
    std::vector<DecisionPoint> evaluated;
};

///
/// Complete poll around `center` at its stepsize. Infeasible poll points
/// are skipped without evaluation; non-finite evaluations are discarded but
/// still consume budget.
///
PollOutcome poll(const ArchiveEntry& center, const PollDirections& D,
                 const MooProblem& problem, const Archive& archive,
                 std::int64_t budget_left);

///
/// On success the new entries and the retained center get gamma * alpha;
/// on failure the center gets beta1 * alpha. `alpha` is the center's
/// stepsize at poll time.
///
Archive update_stepsize(const Archive& archive, std::optional<std::size_t> center_index,
                        const std::vector<std::size_t>& new_points, bool success,
                        double alpha, const SolverConfig& config);

struct IterationRecord
{
    std::int64_t iteration = 0;
    ArchiveEntry center;
    bool pruned = false;
    bool zero_gradient_fallback = false;
    Index directions_used = 0;
    const Archive* before = nullptr;
    const Archive* after = nullptr;
    bool success = false;
    bool all_infeasible = false;
    const std::vector<DecisionPoint>* evaluated = nullptr;
};

using IterationObserver = std::function<void(const IterationRecord&)>;

struct RunResult
{
    Archive final_front;
    std::int64_t evaluations_used = 0;
    std::int64_t iterations = 0;
    std::vector<bool> success_history;
    std::vector<double> min_stepsize_history;
    /// Iterations polled with the full set while pruning was requested.
    std::int64_t full_set_iterations = 0;
    std::int64_t zero_gradient_fallbacks = 0;
    bool stopped_on_tolerance = false;
};

RunResult solve(const MooProblem& problem, const SolverConfig& config,
                const std::vector<DecisionPoint>& initial_points,
                const IterationObserver& observer = {});

/// Box center.
std::vector<DecisionPoint> initial_points_center(const BoxDomain& box);
/// `m` points evenly spaced on the segment from `lower` to `upper`.
std::vector<DecisionPoint> initial_points_line(const BoxDomain& box, Index m);
/// `m` uniform points drawn from a seeded generator.
std::vector<DecisionPoint> initial_points_random(const BoxDomain& box, Index m,
                                                 std::uint64_t seed);

/// One JSON object per line: problem, variant, evaluations, iterations,
/// archive_size, min_stepsize.
void write_run_summary(std::ostream& os, const std::string& problem_id,
                       PruneMode variant, const RunResult& result);

} // namespace dms

#endif /* DMS_SOLVER_HPP */
