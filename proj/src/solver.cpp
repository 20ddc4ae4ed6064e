#include "dms/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

namespace dms
{

PollDirections generate_pss(Index n)
{
    if (n < 1)
    {
        throw DimensionError("generate_pss: dimension must be at least 1");
    }
    PollDirections D;
    D.directions.resize(n, 2 * n);
    D.directions << Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n);
    D.positive_spanning = true;
    return D;
}

PollDirections prune(const PollDirections& D, const Jacobian& gradients)
{
    if (gradients.rows() != D.dimension())
    {
        throw DimensionError("prune: gradient length differs from direction length");
    }
    // descent(i, k) = -grad(f_i)^T d_k
    const Eigen::MatrixXd descent = -(gradients.transpose() * D.directions);

    std::vector<Index> keep;
    for (Index k = 0; k < D.size(); ++k)
    {
        if ((descent.col(k).array() > 0.0).any())
        {
            keep.push_back(k);
        }
    }
    PollDirections out;
    out.directions = D.directions(Eigen::all, keep);
    return out;
}

std::string_view to_string(PruneMode mode)
{
    switch (mode)
    {
    case PruneMode::Classic:
        return "classic";
    case PruneMode::PruneAlways:
        return "prune-always";
    case PruneMode::PruneAdaptive:
        return "prune-adaptive";
    }
    return "unknown";
}

PruneMode parse_prune_mode(std::string_view name)
{
    for (auto mode : {PruneMode::Classic, PruneMode::PruneAlways, PruneMode::PruneAdaptive})
    {
        if (name == to_string(mode))
        {
            return mode;
        }
    }
    throw ConfigError("unknown variant '" + std::string(name) +
                      "' (expected classic, prune-always or prune-adaptive)");
}

void SolverConfig::validate() const
{
    if (!(beta1 > 0.0 && beta1 <= beta2 && beta2 < 1.0))
    {
        throw ConfigError("stepsize contraction requires 0 < beta1 <= beta2 < 1");
    }
    if (!(gamma >= 1.0))
    {
        throw ConfigError("stepsize expansion requires gamma >= 1");
    }
    if (initial_stepsize && !(*initial_stepsize > 0.0))
    {
        throw ConfigError("initial stepsize must be positive");
    }
    if (max_evaluations <= 0)
    {
        throw ConfigError("evaluation budget must be positive");
    }
    if (!(stepsize_tolerance >= 0.0))
    {
        throw ConfigError("stepsize tolerance must be nonnegative");
    }
}

std::optional<std::size_t> select_poll_center(const Archive& archive, double min_stepsize)
{
    if (archive.empty())
    {
        throw StateError("select_poll_center: archive is empty");
    }
    std::optional<std::size_t> best;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < archive.size(); ++i)
    {
        if (archive[i].stepsize < min_stepsize)
        {
            continue;
        }
        // Entries sharing the objective vector are twins, not neighbours.
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < archive.size(); ++j)
        {
            const double d = (archive[i].objectives - archive[j].objectives).norm();
            if (j != i && d > 0.0)
            {
                gap = std::min(gap, d);
            }
        }
        if (gap > best_gap)
        {
            best_gap = gap;
            best = i;
        }
    }
    return best;
}

PollOutcome poll(const ArchiveEntry& center, const PollDirections& D,
                 const MooProblem& problem, const Archive& archive,
                 std::int64_t budget_left)
{
    PollOutcome out;
    std::vector<ArchiveEntry> candidates;
    bool any_feasible = false;

    for (Index k = 0; k < D.size(); ++k)
    {
        DecisionPoint x = center.point + center.stepsize * D.directions.col(k);
        if (!problem.domain().contains(x))
        {
            continue;
        }
        any_feasible = true;
        if (out.evaluations >= budget_left)
        {
            out.incomplete = true;
            break;
        }
        ObjectiveVector f = problem.evaluate(x);
        ++out.evaluations;
        out.evaluated.push_back(x);
        if (f.allFinite())
        {
            candidates.push_back({std::move(x), std::move(f), center.stepsize});
        }
    }

    out.all_infeasible = !any_feasible;
    auto inserted = archive_insert(archive, candidates);
    out.archive = std::move(inserted.archive);
    out.success = inserted.changed;
    out.new_count = inserted.new_count;
    return out;
}

Archive update_stepsize(const Archive& archive, std::optional<std::size_t> center_index,
                        const std::vector<std::size_t>& new_points, bool success,
                        double alpha, const SolverConfig& config)
{
    Archive out = archive;
    if (success)
    {
        const double expanded = config.gamma * alpha;
        for (auto i : new_points)
        {
            out.set_stepsize(i, expanded);
        }
        if (center_index)
        {
            out.set_stepsize(*center_index, expanded);
        }
    }
    else if (center_index)
    {
        // beta1 == beta2 collapses the admissible contraction interval.
        out.set_stepsize(*center_index, config.beta1 * alpha);
    }
    return out;
}

RunResult solve(const MooProblem& problem, const SolverConfig& config,
                const std::vector<DecisionPoint>& initial_points,
                const IterationObserver& observer)
{
    config.validate();
    if (config.prune_mode != PruneMode::Classic && !problem.has_gradient())
    {
        throw ConfigError("variant '" + std::string(to_string(config.prune_mode)) +
                          "' needs gradients, which '" + problem.id() + "' lacks");
    }
    const double alpha0 =
        config.initial_stepsize.value_or(0.1 * problem.domain().max_width());
    if (!(alpha0 > 0.0))
    {
        throw ConfigError("initial stepsize must be positive (degenerate box?)");
    }

    RunResult result;
    std::vector<ArchiveEntry> seeds;
    for (const auto& x : initial_points)
    {
        if (x.size() != problem.dimension() || !problem.domain().contains(x))
        {
            throw ConfigError("initial point is infeasible for '" + problem.id() + "'");
        }
        if (result.evaluations_used >= config.max_evaluations)
        {
            break;
        }
        ObjectiveVector f = problem.evaluate(x);
        ++result.evaluations_used;
        if (f.allFinite())
        {
            seeds.push_back({x, std::move(f), alpha0});
        }
    }
    Archive archive = make_archive(seeds);
    if (archive.empty())
    {
        throw ConfigError("no feasible initial point with finite objectives");
    }

    const PollDirections full = generate_pss(problem.dimension());
    bool skip_prune = false;

    while (result.evaluations_used < config.max_evaluations)
    {
        const auto center_index = select_poll_center(archive, config.stepsize_tolerance);
        if (!center_index)
        {
            result.stopped_on_tolerance = true;
            break;
        }
        const ArchiveEntry center = archive[*center_index];

        IterationRecord record;
        record.iteration = result.iterations;
        record.center = center;

        const PollDirections* directions = &full;
        PollDirections pruned;
        if (config.prune_mode != PruneMode::Classic)
        {
            if (config.prune_mode == PruneMode::PruneAdaptive && skip_prune)
            {
                skip_prune = false;
                ++result.full_set_iterations;
            }
            else
            {
                pruned = prune(full, problem.gradient(center.point));
                if (pruned.empty())
                {
                    record.zero_gradient_fallback = true;
                    ++result.zero_gradient_fallbacks;
                    ++result.full_set_iterations;
                }
                else
                {
                    directions = &pruned;
                    record.pruned = true;
                }
            }
        }
        record.directions_used = directions->size();

        PollOutcome outcome =
            poll(center, *directions, problem, archive,
                 config.max_evaluations - result.evaluations_used);
        result.evaluations_used += outcome.evaluations;

        if (config.prune_mode == PruneMode::PruneAdaptive && record.pruned &&
            outcome.all_infeasible)
        {
            skip_prune = true;
        }

        std::vector<std::size_t> new_points(outcome.new_count);
        for (std::size_t i = 0; i < outcome.new_count; ++i)
        {
            new_points[i] = outcome.archive.size() - outcome.new_count + i;
        }
        Archive next = update_stepsize(outcome.archive, outcome.archive.find(center.point),
                                       new_points, outcome.success, center.stepsize, config);

        double min_step = std::numeric_limits<double>::infinity();
        for (const auto& e : next)
        {
            min_step = std::min(min_step, e.stepsize);
        }
        result.success_history.push_back(outcome.success);
        result.min_stepsize_history.push_back(min_step);
        ++result.iterations;

        if (observer)
        {
            record.before = &archive;
            record.after = &next;
            record.success = outcome.success;
            record.all_infeasible = outcome.all_infeasible;
            record.evaluated = &outcome.evaluated;
            observer(record);
        }

        archive = std::move(next);
        if (outcome.incomplete)
        {
            break;
        }
    }

    result.final_front = std::move(archive);
    return result;
}

std::vector<DecisionPoint> initial_points_center(const BoxDomain& box)
{
    return {box.center()};
}

std::vector<DecisionPoint> initial_points_line(const BoxDomain& box, Index m)
{
    if (m < 1)
    {
        throw ConfigError("line initialization needs at least one point");
    }
    if (m == 1)
    {
        return initial_points_center(box);
    }
    std::vector<DecisionPoint> out;
    for (Index i = 0; i < m; ++i)
    {
        const double t = static_cast<double>(i) / static_cast<double>(m - 1);
        DecisionPoint x = box.lower() + t * (box.upper() - box.lower());
        // Keep the end points exactly on the bounds.
        out.push_back(x.cwiseMax(box.lower()).cwiseMin(box.upper()));
    }
    return out;
}

std::vector<DecisionPoint> initial_points_random(const BoxDomain& box, Index m,
                                                 std::uint64_t seed)
{
    if (m < 1)
    {
        throw ConfigError("random initialization needs at least one point");
    }
    std::mt19937_64 rng(seed);
    // 53-bit mantissa draw; platform-independent unlike uniform_real_distribution.
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<DecisionPoint> out;
    for (Index i = 0; i < m; ++i)
    {
        DecisionPoint x(box.dimension());
        for (Index j = 0; j < x.size(); ++j)
        {
            x(j) = box.lower()(j) + unit() * (box.upper()(j) - box.lower()(j));
        }
        out.push_back(std::move(x));
    }
    return out;
}

void write_run_summary(std::ostream& os, const std::string& problem_id, PruneMode variant,
                       const RunResult& result)
{
    double min_step = std::numeric_limits<double>::infinity();
    for (const auto& e : result.final_front)
    {
        min_step = std::min(min_step, e.stepsize);
    }
    nlohmann::ordered_json j;
    j["problem"] = problem_id;
    j["variant"] = std::string(to_string(variant));
    j["evaluations"] = result.evaluations_used;
    j["iterations"] = result.iterations;
    j["archive_size"] = result.final_front.size();
    j["min_stepsize"] = result.final_front.empty() ? 0.0 : min_step;
    j["full_set_iterations"] = result.full_set_iterations;
    j["stopped_on_tolerance"] = result.stopped_on_tolerance;
    os << j.dump() << '\n';
}

} // namespace dms
