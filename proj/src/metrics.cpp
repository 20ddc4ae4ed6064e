#include "dms/metrics.hpp"

namespace dms
{

Front::Front(const Eigen::MatrixXd& points)
{
    const auto kept = filter_nondominated(points);
    points_ = points(kept, Eigen::all);
}

bool Front::contains(const Eigen::VectorXd& y) const
{
    for (Index i = 0; i < points_.rows(); ++i)
    {
        if (points_.row(i).transpose() == y)
        {
            return true;
        }
    }
    return false;
}

namespace
{

Index common_objective_count(const std::vector<Front>& fronts)
{
    Index p = -1;
    for (const auto& f : fronts)
    {
        if (f.empty())
        {
            continue;
        }
        if (p >= 0 && f.num_objectives() != p)
        {
            throw DimensionError("fronts have different numbers of objectives");
        }
        p = f.num_objectives();
    }
    if (p < 0)
    {
        for (const auto& f : fronts)
        {
            p = std::max(p, f.num_objectives());
        }
    }
    return std::max<Index>(p, 0);
}

Eigen::MatrixXd stack(const std::vector<Front>& fronts, Index p)
{
    Index rows = 0;
    for (const auto& f : fronts)
    {
        rows += f.size();
    }
    Eigen::MatrixXd all(rows, p);
    Index r = 0;
    for (const auto& f : fronts)
    {
        if (!f.empty())
        {
            all.middleRows(r, f.size()) = f.points();
            r += f.size();
        }
    }
    return all;
}

// Sorted values of objective j bracketed by the extremes; returns the gaps.
std::vector<double> bracketed_gaps(const Front& front, const Extremes& ex, Index j)
{
    std::vector<double> v(front.points().col(j).data(),
                          front.points().col(j).data() + front.size());
    std::sort(v.begin(), v.end());
    std::vector<double> gaps;
    gaps.reserve(v.size() + 1);
    double prev = ex.min(j);
    for (double x : v)
    {
        gaps.push_back(x - prev);
        prev = x;
    }
    gaps.push_back(ex.max(j) - prev);
    return gaps;
}

void check_extremes(const Front& front, const Extremes& ex)
{
    if (ex.min.size() != front.num_objectives() || ex.max.size() != front.num_objectives())
    {
        throw DimensionError("extremes and front differ in objective count");
    }
}

} // namespace

ReferenceFront build_reference_front(const std::vector<Front>& fronts)
{
    if (fronts.empty())
    {
        throw DimensionError("build_reference_front: no fronts given");
    }
    const Index p = common_objective_count(fronts);
    return Front(stack(fronts, p));
}

double purity(const Front& front, const ReferenceFront& reference)
{
    if (front.empty())
    {
        return kMetricFailure;
    }
    Index hits = 0;
    for (Index i = 0; i < front.size(); ++i)
    {
        if (reference.contains(front.points().row(i).transpose()))
        {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(front.size());
}

Extremes extreme_points(const ReferenceFront& reference)
{
    if (reference.empty())
    {
        throw StateError("extreme_points: reference front is empty");
    }
    return {reference.points().colwise().minCoeff().transpose(),
            reference.points().colwise().maxCoeff().transpose()};
}

double gamma_spread(const Front& front, const Extremes& extremes)
{
    if (front.empty())
    {
        return kMetricFailure;
    }
    check_extremes(front, extremes);
    double gamma = 0.0;
    for (Index j = 0; j < front.num_objectives(); ++j)
    {
        for (double g : bracketed_gaps(front, extremes, j))
        {
            gamma = std::max(gamma, g);
        }
    }
    return gamma;
}

double delta_spread(const Front& front, const Extremes& extremes)
{
    if (front.size() < 2)
    {
        return kMetricFailure;
    }
    check_extremes(front, extremes);
    const auto n = static_cast<double>(front.size());
    double delta = 0.0;
    for (Index j = 0; j < front.num_objectives(); ++j)
    {
        const auto gaps = bracketed_gaps(front, extremes, j);
        const double outer = gaps.front() + gaps.back();
        const double mean =
            std::accumulate(gaps.begin() + 1, gaps.end() - 1, 0.0) / (n - 1.0);
        double spread = 0.0;
        for (auto it = gaps.begin() + 1; it != gaps.end() - 1; ++it)
        {
            spread += std::abs(*it - mean);
        }
        const double denom = outer + (n - 1.0) * mean;
        if (denom > 0.0)
        {
            delta = std::max(delta, (outer + spread) / denom);
        }
    }
    return delta;
}

double hypervolume(const Front& front, const Eigen::VectorXd& ref)
{
    return hypervolume(front.points(), ref);
}

double scaled_hypervolume(const Front& front, const Eigen::VectorXd& ref,
                          const Eigen::VectorXd& ideal)
{
    if (ideal.size() != ref.size())
    {
        throw DimensionError("scaled_hypervolume: ideal and reference point differ in length");
    }
    const double box = (ref - ideal).prod();
    if (!(box > 0.0))
    {
        return kMetricFailure;
    }
    return hypervolume(front, ref) / box;
}

Eigen::VectorXd reference_point(const std::vector<Front>& fronts)
{
    const Index p = common_objective_count(fronts);
    const Eigen::MatrixXd all = stack(fronts, p);
    if (all.rows() == 0)
    {
        throw StateError("reference_point: all fronts are empty");
    }
    const Eigen::VectorXd hi = all.colwise().maxCoeff().transpose();
    const Eigen::VectorXd lo = all.colwise().minCoeff().transpose();
    const Eigen::VectorXd margin = (0.01 * (hi - lo)).cwiseMax(1e-6);
    return hi + margin;
}

Eigen::VectorXd ideal_point(const std::vector<Front>& fronts)
{
    const Index p = common_objective_count(fronts);
    const Eigen::MatrixXd all = stack(fronts, p);
    if (all.rows() == 0)
    {
        throw StateError("ideal_point: all fronts are empty");
    }
    return all.colwise().minCoeff().transpose();
}

} // namespace dms
