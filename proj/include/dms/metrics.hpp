///
/// \file metrics.hpp
///
/// Quality indicators for Pareto front approximations: purity, the Gamma and
/// Delta spread metrics, and the hypervolume indicator.
///
/// Indicators that are undefined for a given input (an empty front, Delta on
/// a single point, a zero-volume normalizing box) return `kMetricFailure`.
///
#ifndef DMS_METRICS_HPP
#define DMS_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "dms/core.hpp"

namespace dms
{

inline constexpr double kMetricFailure = std::numeric_limits<double>::quiet_NaN();

inline bool is_failure(double v)
{
    return std::isnan(v);
}

///
/// Nondominated set of objective vectors, one per row. Construction drops
/// dominated rows and repeated vectors.
///
class Front
{
public:
    explicit Front(Index num_objectives = 0)
        : points_(0, num_objectives)
    {
    }
    explicit Front(const Eigen::MatrixXd& points);

    Index size() const
    {
        return points_.rows();
    }
    Index num_objectives() const
    {
        return points_.cols();
    }
    bool empty() const
    {
        return points_.rows() == 0;
    }
    const Eigen::MatrixXd& points() const
    {
        return points_;
    }
    bool contains(const Eigen::VectorXd& y) const;

private:
    Eigen::MatrixXd points_;
};

/// Combined front of all solvers on one problem.
using ReferenceFront = Front;

/// Nondominated filter of the union. Empty fronts are ignored when checking
/// that all fronts share the same objective count.
ReferenceFront build_reference_front(const std::vector<Front>& fronts);

/// Fraction of `front` that survives in `reference` (exact vector equality).
double purity(const Front& front, const ReferenceFront& reference);

/// Per-objective bracketing values taken from the reference front.
struct Extremes
{
    Eigen::VectorXd min;
    Eigen::VectorXd max;
};

Extremes extreme_points(const ReferenceFront& reference);

/// Largest gap between consecutive sorted values, per objective, with the
/// extremes prepended and appended.
double gamma_spread(const Front& front, const Extremes& extremes);

/// Gap-uniformity measure; needs at least two points. An objective whose
/// gaps are all zero contributes 0.
double delta_spread(const Front& front, const Extremes& extremes);

//------------------------------------------------------------------------------
// Hypervolume
//------------------------------------------------------------------------------

namespace detail
{

// Area dominated by 2-d points (rows, already inside the box) below `ref`.
template <typename Scalar>
Scalar hypervolume_2d(std::vector<std::pair<Scalar, Scalar>> pts, Scalar ref0, Scalar ref1)
{
    std::sort(pts.begin(), pts.end());
    Scalar area(0);
    Scalar ceiling = ref1;
    for (const auto& [a, b] : pts)
    {
        if (b < ceiling)
        {
            area += (ref0 - a) * (ceiling - b);
            ceiling = b;
        }
    }
    return area;
}

} // namespace detail

///
/// Exact Lebesgue measure of the union of boxes [y, ref] over rows y of
/// `points`. Rows exceeding `ref` in some coordinate are ignored. Supports
/// two objectives (sweep) and three (slab decomposition along the last
/// objective).
///
template <typename DerivedP, typename DerivedR>
typename DerivedP::Scalar hypervolume(const Eigen::MatrixBase<DerivedP>& points,
                                      const Eigen::MatrixBase<DerivedR>& ref)
{
    using Scalar = typename DerivedP::Scalar;
    const Index p = ref.size();
    if (points.rows() > 0 && points.cols() != p)
    {
        throw DimensionError("hypervolume: reference point length differs from front");
    }
    if (p != 2 && p != 3)
    {
        throw DimensionError("hypervolume: only 2 or 3 objectives are supported");
    }

    std::vector<Index> inside;
    for (Index i = 0; i < points.rows(); ++i)
    {
        if ((points.row(i).transpose().array() <= ref.array()).all())
        {
            inside.push_back(i);
        }
    }
    if (inside.empty())
    {
        return Scalar(0);
    }

    if (p == 2)
    {
        std::vector<std::pair<Scalar, Scalar>> pts;
        for (Index i : inside)
        {
            pts.emplace_back(points(i, 0), points(i, 1));
        }
        return detail::hypervolume_2d(std::move(pts), ref(0), ref(1));
    }

    std::sort(inside.begin(), inside.end(),
              [&](Index a, Index b) { return points(a, 2) < points(b, 2); });
    Scalar volume(0);
    std::vector<std::pair<Scalar, Scalar>> slab;
    for (std::size_t k = 0; k < inside.size(); ++k)
    {
        const Index i = inside[k];
        slab.emplace_back(points(i, 0), points(i, 1));
        const Scalar top = (k + 1 < inside.size()) ? points(inside[k + 1], 2) : ref(2);
        const Scalar height = top - points(i, 2);
        if (height > Scalar(0))
        {
            volume += height * detail::hypervolume_2d(slab, ref(0), ref(1));
        }
    }
    return volume;
}

double hypervolume(const Front& front, const Eigen::VectorXd& ref);

/// Hypervolume divided by the volume of the box [ideal, ref].
double scaled_hypervolume(const Front& front, const Eigen::VectorXd& ref,
                          const Eigen::VectorXd& ideal);

/// Componentwise maximum over all fronts plus 1% of each objective's range
/// (at least 1e-6).
Eigen::VectorXd reference_point(const std::vector<Front>& fronts);

/// Componentwise minimum over all fronts.
Eigen::VectorXd ideal_point(const std::vector<Front>& fronts);

} // namespace dms

#endif /* DMS_METRICS_HPP */
