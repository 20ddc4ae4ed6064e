///
/// \file core.hpp
///
/// Domain types, Pareto dominance and the nondominated archive.
///
#ifndef DMS_CORE_HPP
#define DMS_CORE_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dms
{

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Decision-space point x.
using DecisionPoint = Eigen::VectorXd;
/// Objective-space vector F(x).
using ObjectiveVector = Eigen::VectorXd;

struct DimensionError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct StateError : std::logic_error
{
    using std::logic_error::logic_error;
};

struct DomainError : std::domain_error
{
    using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error
{
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line(line)
    {
    }
    std::size_t line;
};

//------------------------------------------------------------------------------
// Box domain
//------------------------------------------------------------------------------

///
/// Closed box `lower <= x <= upper` with finite bounds.
///
class BoxDomain
{
public:
    BoxDomain(Eigen::VectorXd lower, Eigen::VectorXd upper);

    Index dimension() const
    {
        return lower_.size();
    }
    const Eigen::VectorXd& lower() const
    {
        return lower_;
    }
    const Eigen::VectorXd& upper() const
    {
        return upper_;
    }

    template <typename Derived>
    bool contains(const Eigen::MatrixBase<Derived>& x) const
    {
        return x.size() == lower_.size() &&
               (x.array() >= lower_.array()).all() &&
               (x.array() <= upper_.array()).all();
    }

    Eigen::VectorXd center() const
    {
        return 0.5 * (lower_ + upper_);
    }
    double max_width() const
    {
        return (upper_ - lower_).maxCoeff();
    }

private:
    Eigen::VectorXd lower_;
    Eigen::VectorXd upper_;
};

//------------------------------------------------------------------------------
// Dominance
//------------------------------------------------------------------------------

///
/// True iff `a` dominates `b` under minimization: `b - a` lies in the
/// nonnegative orthant and is not the zero vector. Comparisons are exact.
///
template <typename DerivedA, typename DerivedB>
bool dominates(const Eigen::MatrixBase<DerivedA>& a,
               const Eigen::MatrixBase<DerivedB>& b)
{
    if (a.size() != b.size())
    {
        throw DimensionError("dominates: objective vectors differ in length");
    }
    bool strict = false;
    for (Index i = 0; i < a.size(); ++i)
    {
        if (a(i) > b(i))
        {
            return false;
        }
        if (a(i) < b(i))
        {
            strict = true;
        }
    }
    return strict;
}

///
/// Indices of the nondominated rows of `points` (one objective vector per
/// row). Exact duplicates of an already kept row are dropped; survivors keep
/// their input order.
///
template <typename Derived>
std::vector<Index> filter_nondominated(const Eigen::MatrixBase<Derived>& points)
{
    std::vector<Index> kept;
    const Index n = points.rows();
    for (Index i = 0; i < n; ++i)
    {
        bool keep = true;
        for (Index j = 0; j < n && keep; ++j)
        {
            if (j != i && dominates(points.row(j), points.row(i)))
            {
                keep = false;
            }
        }
        if (!keep)
        {
            continue;
        }
        for (Index k : kept)
        {
            if (points.row(k) == points.row(i))
            {
                keep = false;
                break;
            }
        }
        if (keep)
        {
            kept.push_back(i);
        }
    }
    return kept;
}

/// Overload for a sequence of objective vectors.
std::vector<Index> filter_nondominated(const std::vector<ObjectiveVector>& points);

//------------------------------------------------------------------------------
// Archive
//------------------------------------------------------------------------------

struct ArchiveEntry
{
    DecisionPoint point;
    ObjectiveVector objectives;
    double stepsize = 1.0;
};

struct InsertResult;

///
/// Ordered list of feasible, pairwise nondominated points and their stepsizes.
///
/// Distinct decision points with equal objective vectors are both kept; a
/// decision point already present is never inserted twice.
///
class Archive
{
public:
    Archive() = default;

    std::size_t size() const
    {
        return entries_.size();
    }
    bool empty() const
    {
        return entries_.empty();
    }
    const ArchiveEntry& operator[](std::size_t i) const
    {
        return entries_[i];
    }
    const std::vector<ArchiveEntry>& entries() const
    {
        return entries_;
    }
    auto begin() const
    {
        return entries_.begin();
    }
    auto end() const
    {
        return entries_.end();
    }

    /// Position of the entry at decision point `x`, if any.
    std::optional<std::size_t> find(const DecisionPoint& x) const;

    /// Objective vectors as rows of a `size() x p` matrix.
    Eigen::MatrixXd objective_matrix() const;

    void set_stepsize(std::size_t i, double stepsize);

    /// True when no entry dominates another and decision points are unique.
    bool is_consistent() const;

    bool operator==(const Archive& other) const;

    friend InsertResult archive_insert(const Archive&,
                                       const std::vector<ArchiveEntry>&);

private:
    std::vector<ArchiveEntry> entries_;
};

struct InsertResult
{
    Archive archive;
    bool changed = false;
    /// Number of inserted candidates that survived; they occupy the tail.
    std::size_t new_count = 0;
};

///
/// Nondominated filter of `archive` united with `candidates`. Surviving
/// archive entries keep their order and accepted candidates are appended.
/// `changed` is true iff the resulting list differs from the input.
///
InsertResult archive_insert(const Archive& archive,
                            const std::vector<ArchiveEntry>& candidates);

/// Archive built from an arbitrary set of evaluated points.
Archive make_archive(const std::vector<ArchiveEntry>& entries);

//------------------------------------------------------------------------------
// Front text format: one objective vector per line, single-space separated,
// 17 significant digits.
//------------------------------------------------------------------------------

void write_front(std::ostream& os, const Eigen::MatrixXd& rows);
void write_front_file(const std::string& path, const Eigen::MatrixXd& rows);

/// Parses a front; throws ParseError with the offending line number.
/// Blank lines and lines starting with '#' are skipped. An empty input
/// yields a `0 x 0` matrix.
Eigen::MatrixXd read_front(std::istream& is);
Eigen::MatrixXd read_front_file(const std::string& path);

std::string format_real(double v);

} // namespace dms

#endif /* DMS_CORE_HPP */
