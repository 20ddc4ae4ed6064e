#include "dms/problems.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace dms
{

MooProblem::MooProblem(std::string id, Index num_objectives, BoxDomain domain,
                       ObjectiveFn objectives, GradientFn gradients)
    : id_(std::move(id)),
      p_(num_objectives),
      domain_(std::move(domain)),
      objectives_(std::move(objectives)),
      gradients_(std::move(gradients))
{
    if (p_ < 1)
    {
        throw DimensionError("MooProblem: at least one objective is required");
    }
    if (!objectives_)
    {
        throw std::invalid_argument("MooProblem: objective function is empty");
    }
}

void MooProblem::check_point(const DecisionPoint& x) const
{
    if (x.size() != dimension())
    {
        throw DimensionError("MooProblem '" + id_ + "': point has wrong dimension");
    }
    if (!domain_.contains(x))
    {
        throw DomainError("MooProblem '" + id_ + "': point outside the box");
    }
}

ObjectiveVector MooProblem::evaluate(const DecisionPoint& x) const
{
    check_point(x);
    return objectives_(x);
}

Jacobian MooProblem::gradient(const DecisionPoint& x) const
{
    if (!gradients_)
    {
        throw CapabilityError("MooProblem '" + id_ + "' has no analytic gradient");
    }
    check_point(x);
    return gradients_(x);
}

double check_gradient(const MooProblem& problem, const DecisionPoint& x, double h)
{
    const Jacobian analytic = problem.gradient(x);
    double worst = 0.0;
    DecisionPoint xp = x;
    DecisionPoint xm = x;
    for (Index j = 0; j < x.size(); ++j)
    {
        xp(j) = x(j) + h;
        xm(j) = x(j) - h;
        const Eigen::VectorXd central =
            (problem.evaluate(xp) - problem.evaluate(xm)) / (2.0 * h);
        xp(j) = x(j);
        xm(j) = x(j);
        for (Index i = 0; i < problem.num_objectives(); ++i)
        {
            const double g = analytic(j, i);
            const double err = std::abs(g - central(i)) / std::max(std::abs(g), 1.0);
            worst = std::max(worst, err);
        }
    }
    return worst;
}

namespace
{

using Eigen::VectorXd;

BoxDomain uniform_box(Index n, double lo, double hi)
{
    return {VectorXd::Constant(n, lo), VectorXd::Constant(n, hi)};
}

// sum_k w_k (x_k - c_k)^2 + offset
struct Quadratic
{
    VectorXd weight;
    VectorXd center;
    double offset = 0.0;

    double value(const VectorXd& x) const
    {
        return (weight.array() * (x - center).array().square()).sum() + offset;
    }
    VectorXd grad(const VectorXd& x) const
    {
        return 2.0 * (weight.array() * (x - center).array()).matrix();
    }
};

MooProblem quadratic_problem(std::string id, BoxDomain box, std::vector<Quadratic> parts)
{
    const auto p = static_cast<Index>(parts.size());
    auto f = [parts](const VectorXd& x) {
        VectorXd out(static_cast<Index>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i)
        {
            out(static_cast<Index>(i)) = parts[i].value(x);
        }
        return out;
    };
    auto g = [parts](const VectorXd& x) {
        Jacobian out(x.size(), static_cast<Index>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i)
        {
            out.col(static_cast<Index>(i)) = parts[i].grad(x);
        }
        return out;
    };
    return {std::move(id), p, std::move(box), std::move(f), std::move(g)};
}

Quadratic quad2(double w1, double c1, double w2, double c2, double offset = 0.0)
{
    return {VectorXd{{w1, w2}}, VectorXd{{c1, c2}}, offset};
}

// f1 = 1 - exp(-|x - c|^2), f2 = 1 - exp(-|x + c|^2), c = 1/sqrt(n) * ones.
MooProblem fonseca_problem(std::string id, Index n)
{
    const double c = 1.0 / std::sqrt(static_cast<double>(n));
    auto f = [c](const VectorXd& x) {
        const double s1 = (x.array() - c).square().sum();
        const double s2 = (x.array() + c).square().sum();
        return VectorXd{{1.0 - std::exp(-s1), 1.0 - std::exp(-s2)}};
    };
    auto g = [c](const VectorXd& x) {
        const double e1 = std::exp(-(x.array() - c).square().sum());
        const double e2 = std::exp(-(x.array() + c).square().sum());
        Jacobian out(x.size(), 2);
        out.col(0) = 2.0 * e1 * (x.array() - c).matrix();
        out.col(1) = 2.0 * e2 * (x.array() + c).matrix();
        return out;
    };
    return {std::move(id), 2, uniform_box(n, -4.0, 4.0), std::move(f), std::move(g)};
}

MooProblem sp1()
{
    auto f = [](const VectorXd& x) {
        const double d = x(0) - x(1);
        return VectorXd{{(x(0) - 1.0) * (x(0) - 1.0) + d * d,
                         (x(1) - 3.0) * (x(1) - 3.0) + d * d}};
    };
    auto g = [](const VectorXd& x) {
        const double d = x(0) - x(1);
        Jacobian out(2, 2);
        out << 2.0 * (x(0) - 1.0) + 2.0 * d, 2.0 * d,
            -2.0 * d, 2.0 * (x(1) - 3.0) - 2.0 * d;
        return out;
    };
    return {"SP1", 2, uniform_box(2, -1.0, 5.0), std::move(f), std::move(g)};
}

// Poloni's problem, stated for minimization.
MooProblem mop3()
{
    const double a1 = 0.5 * std::sin(1.0) - 2.0 * std::cos(1.0) + std::sin(2.0) -
                      1.5 * std::cos(2.0);
    const double a2 = 1.5 * std::sin(1.0) - std::cos(1.0) + 2.0 * std::sin(2.0) -
                      0.5 * std::cos(2.0);
    auto b = [](const VectorXd& x) {
        const double s1 = std::sin(x(0)), c1 = std::cos(x(0));
        const double s2 = std::sin(x(1)), c2 = std::cos(x(1));
        return std::pair{0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2,
                         1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2};
    };
    auto f = [=](const VectorXd& x) {
        const auto [b1, b2] = b(x);
        return VectorXd{{1.0 + (a1 - b1) * (a1 - b1) + (a2 - b2) * (a2 - b2),
                         (x(0) + 3.0) * (x(0) + 3.0) + (x(1) + 1.0) * (x(1) + 1.0)}};
    };
    auto g = [=](const VectorXd& x) {
        const auto [b1, b2] = b(x);
        const double s1 = std::sin(x(0)), c1 = std::cos(x(0));
        const double s2 = std::sin(x(1)), c2 = std::cos(x(1));
        const double db1_dx1 = 0.5 * c1 + 2.0 * s1;
        const double db1_dx2 = c2 + 1.5 * s2;
        const double db2_dx1 = 1.5 * c1 + s1;
        const double db2_dx2 = 2.0 * c2 + 0.5 * s2;
        Jacobian out(2, 2);
        out(0, 0) = -2.0 * (a1 - b1) * db1_dx1 - 2.0 * (a2 - b2) * db2_dx1;
        out(1, 0) = -2.0 * (a1 - b1) * db1_dx2 - 2.0 * (a2 - b2) * db2_dx2;
        out(0, 1) = 2.0 * (x(0) + 3.0);
        out(1, 1) = 2.0 * (x(1) + 1.0);
        return out;
    };
    return {"MOP3", 2, uniform_box(2, -std::numbers::pi, std::numbers::pi), std::move(f),
            std::move(g)};
}

MooProblem mop7()
{
    auto f = [](const VectorXd& x) {
        const double u = x(0) + x(1) - 3.0;
        const double v = -x(0) + x(1) + 2.0;
        const double s = x(0) + 2.0 * x(1) - 1.0;
        const double t = 2.0 * x(1) - x(0);
        return VectorXd{{(x(0) - 2.0) * (x(0) - 2.0) / 2.0 +
                             (x(1) + 1.0) * (x(1) + 1.0) / 13.0 + 3.0,
                         u * u / 36.0 + v * v / 8.0 - 17.0,
                         s * s / 175.0 + t * t / 17.0 - 13.0}};
    };
    auto g = [](const VectorXd& x) {
        const double u = x(0) + x(1) - 3.0;
        const double v = -x(0) + x(1) + 2.0;
        const double s = x(0) + 2.0 * x(1) - 1.0;
        const double t = 2.0 * x(1) - x(0);
        Jacobian out(2, 3);
        out(0, 0) = x(0) - 2.0;
        out(1, 0) = 2.0 * (x(1) + 1.0) / 13.0;
        out(0, 1) = u / 18.0 - v / 4.0;
        out(1, 1) = u / 18.0 + v / 4.0;
        out(0, 2) = 2.0 * s / 175.0 - 2.0 * t / 17.0;
        out(1, 2) = 4.0 * s / 175.0 + 4.0 * t / 17.0;
        return out;
    };
    return {"MOP7", 3, uniform_box(2, -400.0, 400.0), std::move(f), std::move(g)};
}

MooProblem zdt2(Index n)
{
    const double slope = 9.0 / static_cast<double>(n - 1);
    auto f = [slope](const VectorXd& x) {
        const double g = 1.0 + slope * x.tail(x.size() - 1).sum();
        const double r = x(0) / g;
        return VectorXd{{x(0), g * (1.0 - r * r)}};
    };
    auto grad = [slope](const VectorXd& x) {
        const double g = 1.0 + slope * x.tail(x.size() - 1).sum();
        const double r = x(0) / g;
        Jacobian out = Jacobian::Zero(x.size(), 2);
        out(0, 0) = 1.0;
        out(0, 1) = -2.0 * r;
        out.col(1).tail(x.size() - 1).setConstant(slope * (1.0 + r * r));
        return out;
    };
    return {"ZDT2", 2, uniform_box(n, 0.0, 1.0), std::move(f), std::move(grad)};
}

std::vector<MooProblem> build_catalog()
{
    std::vector<MooProblem> out;
    out.push_back(quadratic_problem("BK1", uniform_box(2, -5.0, 10.0),
                                    {quad2(1, 0, 1, 0), quad2(1, 5, 1, 5)}));
    out.push_back(sp1());
    out.push_back(fonseca_problem("Fonseca", 2));
    out.push_back(fonseca_problem("MOP2", 4));
    out.push_back(mop3());
    out.push_back(mop7());
    out.push_back(quadratic_problem("Jin1", uniform_box(2, 0.0, 1.0),
                                    {quad2(0.5, 0, 0.5, 0), quad2(0.5, 2, 0.5, 2)}));
    // Lovison's problems are posed as maximization; these are the negated objectives.
    out.push_back(quadratic_problem("lovison1", uniform_box(2, 0.0, 3.0),
                                    {quad2(1.05, 0, 0.98, 0), quad2(0.99, 3, 1.03, 2.5)}));
    out.push_back(quadratic_problem("SSFYY1", uniform_box(2, -100.0, 100.0),
                                    {quad2(1, 0, 1, 0), quad2(1, 1, 1, 2)}));
    out.push_back(quadratic_problem(
        "MHHM2", uniform_box(2, 0.0, 1.0),
        {quad2(1, 0.8, 1, 0.6), quad2(1, 0.85, 1, 0.7), quad2(1, 0.9, 1, 0.6)}));
    out.push_back(quadratic_problem(
        "VFM1", uniform_box(2, -2.0, 2.0),
        {quad2(1, 0, 1, 1), quad2(1, 0, 1, -1, 1.0), quad2(1, 1, 1, 0, 2.0)}));
    out.push_back(zdt2(30));
    return out;
}

} // namespace

const std::vector<MooProblem>& catalog()
{
    static const std::vector<MooProblem> problems = build_catalog();
    return problems;
}

const MooProblem* find_problem(const std::string& id)
{
    for (const auto& p : catalog())
    {
        if (p.id() == id)
        {
            return &p;
        }
    }
    return nullptr;
}

} // namespace dms
