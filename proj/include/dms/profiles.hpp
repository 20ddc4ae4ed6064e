///
/// \file profiles.hpp
///
/// Performance profiles over solver x problem metric tables.
///
#ifndef DMS_PROFILES_HPP
#define DMS_PROFILES_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dms/core.hpp"
#include "dms/metrics.hpp"

namespace dms
{

enum class MetricKind
{
    Purity,
    Hypervolume,
    Gamma,
    Delta,
};

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);
inline constexpr MetricKind kAllMetrics[] = {MetricKind::Purity, MetricKind::Hypervolume,
                                             MetricKind::Gamma, MetricKind::Delta};

///
/// t(problem, solver); smaller is better. Failed cells hold kMetricFailure.
///
struct ProfileTable
{
    std::vector<std::string> problems;
    std::vector<std::string> solvers;
    Eigen::MatrixXd values; // problems x solvers

    void validate() const;
};

/// Row minima below this are replaced by it when forming ratios.
inline constexpr double kRatioFloor = 1e-12;

/// Purity and hypervolume become 1/v (0 becomes a failure); spreads pass through.
ProfileTable invert_for_profile(const ProfileTable& table, MetricKind kind);

struct ProfileCurve
{
    std::string solver;
    /// (tau, rho) pairs, tau strictly increasing from 1.
    std::vector<std::pair<double, double>> breakpoints;

    /// Fraction of problems with ratio <= tau.
    double rho(double tau) const;
};

///
/// rho_s(tau) = |{p : r_ps <= tau}| / |P| with r_ps = t_ps / min_s t_ps.
/// Rows in which every solver failed are dropped from P.
///
std::vector<ProfileCurve> compute_profiles(const ProfileTable& table);

/// Plain-text breakpoint table: `<solver> <tau> <rho>` per line.
void write_breakpoints(std::ostream& os, const std::vector<ProfileCurve>& curves);
std::vector<ProfileCurve> read_breakpoints(std::istream& is);

void write_profile_svg(std::ostream& os, const std::vector<ProfileCurve>& curves,
                       const std::string& title, double tau_max = 10.0);

/// Writes `<stem>.svg` and `<stem>.txt`.
void emit_profile_plot(const std::vector<ProfileCurve>& curves, const std::string& stem,
                       const std::string& title, double tau_max = 10.0);

} // namespace dms

#endif /* DMS_PROFILES_HPP */
