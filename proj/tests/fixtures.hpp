#pragma once

#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "dms/core.hpp"
#include "oracles.hpp"

inline Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows)
{
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
    Eigen::MatrixXd m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows)
    {
        Eigen::Index j = 0;
        for (double v : row)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

inline Eigen::VectorXd vec(std::initializer_list<double> v)
{
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double t : v)
        x(i++) = t;
    return x;
}

inline std::vector<oracle::Row> to_rows(const Eigen::MatrixXd& m)
{
    std::vector<oracle::Row> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        oracle::Row r(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            r[static_cast<std::size_t>(j)] = m(i, j);
        out.push_back(std::move(r));
    }
    return out;
}

/// Entry whose decision point and objective vector coincide.
inline dms::ArchiveEntry entry(std::initializer_list<double> f, double stepsize = 1.0)
{
    return {vec(f), vec(f), stepsize};
}

/// Random integer-valued matrix; small ranges produce ties and duplicates.
inline Eigen::MatrixXd random_grid(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p, int levels)
{
    Eigen::MatrixXd m(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            m(i, j) = static_cast<double>(rng() % static_cast<unsigned>(levels));
    return m;
}

/// Random points on the simplex-like surface sum(y) = 1, jittered; mostly nondominated.
inline Eigen::MatrixXd random_front(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p)
{
    Eigen::MatrixXd m(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        double s = 0.0;
        for (Eigen::Index j = 0; j < p; ++j)
            s += (m(i, j) = 0.05 + oracle::unit(rng));
        m.row(i) /= s;
    }
    return m;
}
