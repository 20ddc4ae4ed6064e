#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dms/profiles.hpp"
#include "fixtures.hpp"

using namespace dms;

namespace
{

ProfileTable table(const Eigen::MatrixXd& values)
{
    ProfileTable t;
    for (Index i = 0; i < values.rows(); ++i)
        t.problems.push_back("P" + std::to_string(i));
    for (Index s = 0; s < values.cols(); ++s)
        t.solvers.push_back("S" + std::to_string(s));
    t.values = values;
    return t;
}

std::vector<oracle::Row> rows_of(const ProfileTable& t)
{
    return to_rows(t.values);
}

} // namespace

TEST_CASE("invert_for_profile")
{
    const auto t = table(mat({{0.5, 0.0, kMetricFailure}}));
    const auto p = invert_for_profile(t, MetricKind::Purity);
    CHECK(p.values(0, 0) == 2.0);
    CHECK(is_failure(p.values(0, 1)));
    CHECK(is_failure(p.values(0, 2)));
    CHECK(invert_for_profile(t, MetricKind::Hypervolume).values(0, 0) == 2.0);
    const auto g = invert_for_profile(table(mat({{0.3}})), MetricKind::Gamma);
    CHECK(g.values(0, 0) == 0.3);
    CHECK(invert_for_profile(table(mat({{0.3}})), MetricKind::Delta).values(0, 0) == 0.3);
}

TEST_CASE("metric names")
{
    for (auto k : kAllMetrics)
        CHECK(parse_metric_kind(to_string(k)) == k);
    CHECK_THROWS(parse_metric_kind("igd"));
}

TEST_CASE("compute_profiles examples")
{
    const auto c = compute_profiles(table(mat({{1, 2}, {2, 1}})));
    REQUIRE(c.size() == 2);
    for (const auto& curve : c)
    {
        CHECK(curve.rho(1.0) == 0.5);
        CHECK(curve.rho(2.0) == 1.0);
        CHECK(curve.rho(1.999) == 0.5);
        CHECK(curve.rho(100.0) == 1.0);
    }
    const auto one = compute_profiles(table(mat({{3}, {0.1}, {7}})));
    CHECK(one[0].rho(1.0) == 1.0);

    CHECK_THROWS(compute_profiles(table(Eigen::MatrixXd(0, 2))));
    CHECK_THROWS(compute_profiles(table(mat({{kMetricFailure}}))));
    ProfileTable bad = table(mat({{1, 2}}));
    bad.solvers.pop_back();
    CHECK_THROWS_AS(compute_profiles(bad), DimensionError);
}

TEST_CASE("failures and all-failed rows")
{
    const double F = kMetricFailure;
    const auto c = compute_profiles(table(mat({{1, F}, {F, F}, {2, 1}})));
    // Row 2 is dropped, so |P| = 2.
    CHECK(c[0].rho(1.0) == 0.5);
    CHECK(c[0].rho(2.0) == 1.0);
    CHECK(c[1].rho(1.0) == 0.5);
    CHECK(c[1].rho(1e300) == 0.5);
}

TEST_CASE("zero row minimum uses the ratio floor")
{
    const auto c = compute_profiles(table(mat({{0, 1e-12 * 5, 0}})));
    CHECK(c[0].rho(1.0) == 1.0);
    CHECK(c[2].rho(1.0) == 1.0);
    CHECK(c[1].rho(4.99) == 0.0);
    CHECK(c[1].rho(5.01) == 1.0);
}

TEST_CASE("random tables match a direct recount")
{
    std::mt19937_64 rng(71);
    for (int t = 0; t < 50; ++t)
    {
        Eigen::MatrixXd v(10, 3);
        for (Index i = 0; i < v.rows(); ++i)
            for (Index s = 0; s < v.cols(); ++s)
            {
                const auto u = rng() % 10;
                v(i, s) = u == 0 ? kMetricFailure
                                 : (u == 1 ? 0.0 : static_cast<double>(1 + rng() % 6) / 4.0);
            }
        const auto tab = table(v);
        bool any = false;
        for (Index i = 0; i < v.size(); ++i)
            any |= !std::isnan(v(i));
        if (!any)
            continue;
        const auto curves = compute_profiles(tab);
        for (std::size_t s = 0; s < 3; ++s)
        {
            double prev = 0.0;
            for (double tau : {1.0, 1.2, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 1e13, 1e300})
            {
                const double got = curves[s].rho(tau);
                CHECK(got == doctest::Approx(oracle::profile_rho(rows_of(tab), s, tau)));
                CHECK(got >= prev);
                prev = got;
            }
            for (const auto& [tau, r] : curves[s].breakpoints)
                CHECK(curves[s].rho(tau) == doctest::Approx(oracle::profile_rho(rows_of(tab), s, tau)));
        }
    }
}

TEST_CASE("rho(1) counts ties for every tying solver and problem order does not matter")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t)
    {
        Eigen::MatrixXd v(8, 3);
        for (Index i = 0; i < v.size(); ++i)
            v(i) = static_cast<double>(1 + rng() % 3);
        const auto curves = compute_profiles(table(v));
        double mass = 0.0;
        for (std::size_t s = 0; s < 3; ++s)
        {
            Index best = 0;
            for (Index i = 0; i < 8; ++i)
                best += v(i, static_cast<Index>(s)) == v.row(i).minCoeff();
            CHECK(curves[s].rho(1.0) == doctest::Approx(best / 8.0));
            mass += curves[s].rho(1.0);
        }
        CHECK(mass >= 1.0 - 1e-12);

        std::vector<Index> perm(8);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto shuffled = compute_profiles(table(Eigen::MatrixXd(v(perm, Eigen::all))));
        for (std::size_t s = 0; s < 3; ++s)
            CHECK(shuffled[s].breakpoints == curves[s].breakpoints);
    }
}

TEST_CASE("breakpoint tables round-trip")
{
    const auto curves = compute_profiles(table(mat({{1, 3.7}, {2.2, 1}, {0.1, 0.3}})));
    std::stringstream ss;
    write_breakpoints(ss, curves);
    CHECK(ss.str().rfind("# solver tau rho", 0) == 0);
    const auto back = read_breakpoints(ss);
    REQUIRE(back.size() == curves.size());
    for (std::size_t s = 0; s < curves.size(); ++s)
    {
        CHECK(back[s].solver == curves[s].solver);
        CHECK(back[s].breakpoints == curves[s].breakpoints);
    }
    std::istringstream bad("S0 1 1\nS0 x 1\n");
    CHECK_THROWS_AS(read_breakpoints(bad), ParseError);
}

TEST_CASE("svg output")
{
    const ProfileCurve flat{"flat", {{1.0, 1.0}}};
    std::ostringstream os;
    write_profile_svg(os, {flat}, "flat", 10.0);
    // Top edge of the plot area is rho = 1.
    CHECK(os.str().find("d=\"M 60 40 H 620\"") != std::string::npos);

    const auto crossing = compute_profiles(table(mat({{1, 2}, {3, 1}})));
    std::ostringstream two;
    write_profile_svg(two, crossing, "a < b", 4.0);
    const std::string s = two.str();
    CHECK(s.find(">S0</text>") != std::string::npos);
    CHECK(s.find(">S1</text>") != std::string::npos);
    CHECK(s.find("#1f77b4") != std::string::npos);
    CHECK(s.find("#d62728") != std::string::npos);
    CHECK(s.find("a &lt; b") != std::string::npos);
    CHECK_THROWS(write_profile_svg(two, {}, "x"));
    CHECK_THROWS(write_profile_svg(two, crossing, "x", 1.0));

    const auto dir = std::filesystem::temp_directory_path() / "dms_profile_test";
    std::filesystem::create_directories(dir);
    emit_profile_plot(crossing, (dir / "p").string(), "p", 4.0);
    CHECK(std::filesystem::exists(dir / "p.svg"));
    std::ifstream txt(dir / "p.txt");
    const auto back = read_breakpoints(txt);
    CHECK(back.size() == 2);
    std::filesystem::remove_all(dir);
    CHECK_THROWS(emit_profile_plot(crossing, "/nonexistent/dir/p", "p"));
}
