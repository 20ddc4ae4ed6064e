///
/// \file problems.hpp
///
/// Bound-constrained multiobjective test problems with analytic gradients.
///
#ifndef DMS_PROBLEMS_HPP
#define DMS_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dms/core.hpp"

namespace dms
{

struct CapabilityError : std::logic_error
{
    using std::logic_error::logic_error;
};

/// Gradients as columns: `n x p`, column i is the gradient of f_i.
using Jacobian = Eigen::MatrixXd;

using ObjectiveFn = std::function<ObjectiveVector(const DecisionPoint&)>;
using GradientFn = std::function<Jacobian(const DecisionPoint&)>;

///
/// Box-constrained problem `min F(x)`, `x` in `domain`.
///
class MooProblem
{
public:
    MooProblem(std::string id, Index num_objectives, BoxDomain domain,
               ObjectiveFn objectives, GradientFn gradients = {});

    const std::string& id() const
    {
        return id_;
    }
    Index dimension() const
    {
        return domain_.dimension();
    }
    Index num_objectives() const
    {
        return p_;
    }
    const BoxDomain& domain() const
    {
        return domain_;
    }
    bool has_gradient() const
    {
        return static_cast<bool>(gradients_);
    }

    /// Throws DomainError outside the box.
    ObjectiveVector evaluate(const DecisionPoint& x) const;

    /// Throws CapabilityError when no analytic gradient is attached.
    Jacobian gradient(const DecisionPoint& x) const;

private:
    void check_point(const DecisionPoint& x) const;

    std::string id_;
    Index p_;
    BoxDomain domain_;
    ObjectiveFn objectives_;
    GradientFn gradients_;
};

/// The twelve smooth benchmark problems.
const std::vector<MooProblem>& catalog();

/// Catalog lookup by id (case-sensitive).
const MooProblem* find_problem(const std::string& id);

///
/// Max over (i, j) of |g_ij - c_ij| / max(|g_ij|, 1), where g is the analytic
/// partial derivative of f_i wrt x_j and c its central difference with step h.
/// `x` must be at least `h` away from the box boundary.
///
double check_gradient(const MooProblem& problem, const DecisionPoint& x, double h = 1e-6);

} // namespace dms

#endif /* DMS_PROBLEMS_HPP */
