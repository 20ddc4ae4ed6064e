#include "dms/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dms
{

BoxDomain::BoxDomain(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper))
{
    if (lower_.size() != upper_.size() || lower_.size() == 0)
    {
        throw DimensionError("BoxDomain: bound vectors must be nonempty and of equal length");
    }
    if (!lower_.allFinite() || !upper_.allFinite())
    {
        throw DomainError("BoxDomain: bounds must be finite");
    }
    if ((lower_.array() > upper_.array()).any())
    {
        throw DomainError("BoxDomain: lower bound exceeds upper bound");
    }
}

std::vector<Index> filter_nondominated(const std::vector<ObjectiveVector>& points)
{
    if (points.empty())
    {
        return {};
    }
    const Index p = points.front().size();
    Eigen::MatrixXd rows(static_cast<Index>(points.size()), p);
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        if (points[i].size() != p)
        {
            throw DimensionError("filter_nondominated: objective vectors differ in length");
        }
        rows.row(static_cast<Index>(i)) = points[i].transpose();
    }
    return filter_nondominated(rows);
}

std::optional<std::size_t> Archive::find(const DecisionPoint& x) const
{
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        if (entries_[i].point.size() == x.size() && entries_[i].point == x)
        {
            return i;
        }
    }
    return std::nullopt;
}

Eigen::MatrixXd Archive::objective_matrix() const
{
    if (entries_.empty())
    {
        return {};
    }
    const Index p = entries_.front().objectives.size();
    Eigen::MatrixXd rows(static_cast<Index>(entries_.size()), p);
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        rows.row(static_cast<Index>(i)) = entries_[i].objectives.transpose();
    }
    return rows;
}

void Archive::set_stepsize(std::size_t i, double stepsize)
{
    if (!(stepsize > 0.0))
    {
        throw DomainError("Archive: stepsize must be positive");
    }
    entries_.at(i).stepsize = stepsize;
}

bool Archive::is_consistent() const
{
    for (std::size_t i = 0; i < entries_.size(); ++i)
    {
        for (std::size_t j = 0; j < entries_.size(); ++j)
        {
            if (i == j)
            {
                continue;
            }
            if (dominates(entries_[i].objectives, entries_[j].objectives))
            {
                return false;
            }
            if (j > i && entries_[i].point == entries_[j].point)
            {
                return false;
            }
        }
        if (!(entries_[i].stepsize > 0.0))
        {
            return false;
        }
    }
    return true;
}

bool Archive::operator==(const Archive& other) const
{
    return std::equal(entries_.begin(), entries_.end(), other.entries_.begin(),
                      other.entries_.end(), [](const auto& a, const auto& b) {
                          return a.point == b.point && a.objectives == b.objectives &&
                                 a.stepsize == b.stepsize;
                      });
}

InsertResult archive_insert(const Archive& archive,
                            const std::vector<ArchiveEntry>& candidates)
{
    InsertResult result;
    auto& entries = result.archive.entries_;
    entries = archive.entries_;
    std::size_t survivors_of_input = entries.size();

    for (const auto& cand : candidates)
    {
        if (result.archive.find(cand.point))
        {
            continue;
        }
        const bool dominated =
            std::any_of(entries.begin(), entries.end(), [&](const ArchiveEntry& e) {
                return dominates(e.objectives, cand.objectives);
            });
        if (dominated)
        {
            continue;
        }
        // Evict everything the candidate dominates, tracking how many of the
        // original entries remain ahead of the appended tail.
        std::size_t pos = 0;
        std::size_t removed_old = 0;
        std::erase_if(entries, [&](const ArchiveEntry& e) {
            const bool gone = dominates(cand.objectives, e.objectives);
            if (gone && pos < survivors_of_input)
            {
                ++removed_old;
            }
            ++pos;
            return gone;
        });
        survivors_of_input -= removed_old;
        entries.push_back(cand);
    }

    result.new_count = entries.size() - survivors_of_input;
    result.changed = !(result.archive.entries_.size() == archive.entries_.size() &&
                       result.new_count == 0);
    return result;
}

Archive make_archive(const std::vector<ArchiveEntry>& entries)
{
    return archive_insert(Archive{}, entries).archive;
}

//------------------------------------------------------------------------------

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_front(std::ostream& os, const Eigen::MatrixXd& rows)
{
    for (Index i = 0; i < rows.rows(); ++i)
    {
        for (Index j = 0; j < rows.cols(); ++j)
        {
            if (j > 0)
            {
                os << ' ';
            }
            os << format_real(rows(i, j));
        }
        os << '\n';
    }
}

void write_front_file(const std::string& path, const Eigen::MatrixXd& rows)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_front(os, rows);
    if (!os)
    {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

Eigen::MatrixXd read_front(std::istream& is)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
        {
            continue;
        }
        std::vector<double> values;
        std::istringstream ls(line);
        std::string token;
        while (ls >> token)
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(token, &used);
            }
            catch (const std::exception&)
            {
                throw ParseError("invalid number '" + token + "'", lineno);
            }
            if (used != token.size())
            {
                throw ParseError("invalid number '" + token + "'", lineno);
            }
            if (!std::isfinite(v))
            {
                throw ParseError("non-finite value '" + token + "'", lineno);
            }
            values.push_back(v);
        }
        if (!rows.empty() && values.size() != rows.front().size())
        {
            throw ParseError("expected " + std::to_string(rows.front().size()) +
                                 " values, found " + std::to_string(values.size()),
                             lineno);
        }
        rows.push_back(std::move(values));
    }

    if (rows.empty())
    {
        return {};
    }
    Eigen::MatrixXd out(static_cast<Index>(rows.size()),
                        static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (std::size_t j = 0; j < rows[i].size(); ++j)
        {
            out(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return out;
}

Eigen::MatrixXd read_front_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
    {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_front(is);
}

} // namespace dms
