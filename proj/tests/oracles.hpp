// Independent reference computations used only by the tests. Nothing here
// calls into the library code it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle
{

using Row = std::vector<double>;

/// Portable uniform draw in [0, 1).
inline double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool weakly_le(const Row& a, const Row& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (a[i] > b[i])
            return false;
    }
    return true;
}

inline bool strictly_better(const Row& a, const Row& b)
{
    return weakly_le(a, b) && a != b;
}

/// Set of distinct vectors not strictly dominated by any input vector.
inline std::set<Row> nondominated_set(const std::vector<Row>& rows)
{
    std::set<Row> out;
    for (const auto& r : rows)
    {
        bool beaten = false;
        for (const auto& s : rows)
        {
            if (strictly_better(s, r))
            {
                beaten = true;
                break;
            }
        }
        if (!beaten)
            out.insert(r);
    }
    return out;
}

struct MonteCarlo
{
    double estimate;
    double standard_error;
};

/// Dominated volume of `rows` inside the box [lo, hi], by uniform sampling.
inline MonteCarlo hypervolume_mc(const std::vector<Row>& rows, const Row& lo, const Row& hi,
                                 std::size_t samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::size_t p = lo.size();
    double box = 1.0;
    for (std::size_t j = 0; j < p; ++j)
        box *= hi[j] - lo[j];
    std::size_t hits = 0;
    Row y(p);
    for (std::size_t s = 0; s < samples; ++s)
    {
        for (std::size_t j = 0; j < p; ++j)
            y[j] = lo[j] + unit(rng) * (hi[j] - lo[j]);
        for (const auto& r : rows)
        {
            if (weakly_le(r, y))
            {
                ++hits;
                break;
            }
        }
    }
    const double f = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * f, box * std::sqrt(f * (1.0 - f) / static_cast<double>(samples))};
}

/// rho_s(tau) straight from the definition; NaN marks a failed cell.
inline double profile_rho(const std::vector<Row>& table, std::size_t solver, double tau,
                          double floor = 1e-12)
{
    std::size_t counted = 0, hit = 0;
    for (const auto& row : table)
    {
        double best = INFINITY;
        for (double t : row)
            if (!std::isnan(t))
                best = std::min(best, t);
        if (best == INFINITY)
            continue;
        ++counted;
        const double t = row[solver];
        if (std::isnan(t))
            continue;
        const double r = (t == best) ? 1.0 : std::max(1.0, t / std::max(best, floor));
        if (r <= tau)
            ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(counted);
}

} // namespace oracle
