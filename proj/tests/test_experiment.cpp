#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "dms/experiment.hpp"
#include "fixtures.hpp"

using namespace dms;
namespace fs = std::filesystem;

namespace
{

struct TempDir
{
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("dms_test_" + name))
    {
        fs::remove_all(path);
    }
    ~TempDir()
    {
        fs::remove_all(path);
    }
};

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

ExperimentConfig small_config(const fs::path& out)
{
    ExperimentConfig c;
    c.output_dir = out.string();
    c.budget = 500;
    return c;
}

} // namespace

TEST_CASE("single problem, single variant")
{
    TempDir tmp("bk1");
    auto c = small_config(tmp.path);
    c.problems = {"BK1"};
    c.variants = {PruneMode::Classic};
    const auto out = run_experiment(c);
    CHECK(out.cells == 1);
    CHECK(out.failures.empty());
    CHECK(fs::exists(tmp.path / "config.txt"));
    CHECK(fs::exists(tmp.path / "fronts" / "BK1__classic.txt"));
    CHECK(fs::exists(tmp.path / "reference" / "BK1.txt"));
    CHECK(count_lines(slurp(tmp.path / "summaries.jsonl")) == 1);
    REQUIRE(out.metrics.size() == 1);
    CHECK(out.metrics[0].purity == 1.0);
    CHECK(out.metrics[0].front_size > 1);

    std::ifstream is(tmp.path / "metrics.jsonl");
    const auto back = read_metric_records(is);
    REQUIRE(back.size() == 1);
    CHECK(back[0].purity == 1.0);
    CHECK(back[0].hypervolume == out.metrics[0].hypervolume);
    // A single front may still yield profiles for the metrics it defines.
    CHECK(fs::exists(tmp.path / "profiles" / "purity.svg"));
}

TEST_CASE("ZDT2 from the Pareto point: the adaptive front is larger")
{
    TempDir tmp("zdt2");
    auto c = small_config(tmp.path);
    c.problems = {"ZDT2"};
    c.variants = {PruneMode::PruneAlways, PruneMode::PruneAdaptive};
    c.init_mode = InitMode::Point;
    c.init_point.assign(30, 0.0);
    const auto out = run_experiment(c);
    REQUIRE(out.metrics.size() == 2);
    CHECK(out.metrics[0].solver == "prune-always");
    CHECK(out.metrics[1].front_size > out.metrics[0].front_size);
}

TEST_CASE("reruns are byte-identical")
{
    TempDir a("rerun_a"), b("rerun_b");
    auto ca = small_config(a.path);
    ca.problems = {"BK1", "MOP7", "SP1"};
    ca.init_mode = InitMode::Random;
    ca.init_count = 3;
    ca.seed = 42;
    auto cb = ca;
    cb.output_dir = b.path.string();
    cb.threads = 1;
    run_experiment(ca);
    run_experiment(cb);
    std::size_t compared = 0;
    for (const auto& e : fs::recursive_directory_iterator(a.path))
    {
        if (!e.is_regular_file() || e.path().filename() == "config.txt")
            continue;
        const auto rel = fs::relative(e.path(), a.path);
        INFO(rel.string());
        CHECK(slurp(e.path()) == slurp(b.path / rel));
        ++compared;
    }
    CHECK(compared >= 10);
}

TEST_CASE("list_problems")
{
    std::ostringstream os;
    list_problems(os);
    const std::string s = os.str();
    CHECK(s.find("ZDT2 30 2") != std::string::npos);
    CHECK(count_lines(s) == 12);
    std::istringstream is(s);
    std::set<std::string> ids;
    std::string line;
    while (std::getline(is, line))
        ids.insert(line.substr(0, line.find(' ')));
    CHECK(ids.size() == 12);
}

TEST_CASE("score_fronts on two hand-written fronts")
{
    // Reference: (0,1), (1,0), (0.5,0.5); (1,0.25) is dominated by (1,0).
    // Hypervolume box: ideal (0,0), upper (1.01,1.01).
    const auto r = score_fronts("hand", {{"A", mat({{0, 1}, {1, 0}})},
                                         {"B", mat({{0.5, 0.5}, {1, 0.25}})}});
    REQUIRE(r.size() == 2);
    const double box = 1.01 * 1.01;
    CHECK(r[0].purity == 1.0);
    CHECK(r[0].gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r[0].delta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r[0].hypervolume == doctest::Approx((0.01 * 1.01 + 0.01 * 1.0) / box).epsilon(1e-12));
    CHECK(r[1].purity == 0.5);
    CHECK(r[1].gamma == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r[1].delta == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r[1].hypervolume == doctest::Approx((0.51 * 0.51 + 0.01 * 0.25) / box).epsilon(1e-12));
    CHECK(r[1].front_size == 2);

    const auto self = score_fronts("self", {{"A", mat({{0, 1}, {0.3, 0.2}})}});
    CHECK(self[0].purity == 1.0);

    const auto empty = score_fronts("e", {{"A", mat({{0, 1}})}, {"E", Eigen::MatrixXd(0, 0)}});
    CHECK(empty[0].purity == 1.0);
    CHECK(is_failure(empty[1].purity));
    CHECK(is_failure(empty[1].gamma));
    CHECK(is_failure(empty[1].delta));
    CHECK(is_failure(empty[1].hypervolume));

    const auto supplied =
        score_fronts("s", {{"A", mat({{0.5, 0.5}})}}, mat({{0, 1}, {1, 0}, {0.5, 0.5}}));
    CHECK(supplied[0].purity == 1.0);
}

TEST_CASE("metric records round-trip with failures as null")
{
    std::vector<MetricRecord> recs{{"P", "S", 0.5, 0.25, kMetricFailure, 0.125, 3}};
    std::stringstream ss;
    write_metric_records(ss, recs);
    CHECK(ss.str().find("\"delta\":null") != std::string::npos);
    const auto back = read_metric_records(ss);
    REQUIRE(back.size() == 1);
    CHECK(back[0].purity == 0.5);
    CHECK(is_failure(back[0].delta));
    CHECK(back[0].front_size == 3);
    std::istringstream bad("{\"problem\":1}\n");
    CHECK_THROWS_AS(read_metric_records(bad), ParseError);
}

TEST_CASE("configuration")
{
    CHECK_THROWS_WITH_AS(resolve_problems({"BK1", "NOPE"}), doctest::Contains("ZDT2"),
                         ConfigError);
    CHECK(resolve_problems({"all"}).size() == 12);
    CHECK(resolve_problems({"BK1", "BK1"}).size() == 1);

    std::istringstream is("# comment\nproblems = BK1, SP1\nvariants = classic\n"
                          "budget = 500\ninit = line\ninit_count = 4\nbeta1 = 0.25\n");
    const auto c = read_config(is);
    CHECK(c.problems == std::vector<std::string>{"BK1", "SP1"});
    CHECK(c.variants == std::vector<PruneMode>{PruneMode::Classic});
    CHECK(c.budget == 500);
    CHECK(c.init_mode == InitMode::Line);
    CHECK(initial_points_for(c, *find_problem("BK1")).size() == 4);
    const auto sc = solver_config_for(c, PruneMode::Classic);
    CHECK(sc.beta1 == 0.25);
    CHECK(sc.beta2 == 0.25);
    CHECK(sc.max_evaluations == 500);

    std::stringstream ss;
    write_config(ss, c);
    const auto again = read_config(ss);
    std::stringstream ss2;
    write_config(ss2, again);
    CHECK(ss.str() == ss2.str());

    ExperimentConfig e;
    CHECK_THROWS_AS(apply_setting(e, "colour", "red"), ConfigError);
    CHECK_THROWS_AS(apply_setting(e, "budget", "lots"), ConfigError);
    CHECK_THROWS_AS(apply_setting(e, "variants", "greedy"), ConfigError);
    CHECK_THROWS_AS(apply_setting(e, "init", "sideways"), ConfigError);
    e.budget = 0;
    CHECK_THROWS_AS(e.validate(), ConfigError);
    e = {};
    e.init_mode = InitMode::Point;
    CHECK_THROWS_AS(e.validate(), ConfigError);
    e.init_point = {1.0};
    CHECK_THROWS_AS(initial_points_for(e, *find_problem("BK1")), ConfigError);
}

TEST_CASE("unknown problem aborts the experiment before any run")
{
    TempDir tmp("unknown");
    auto c = small_config(tmp.path);
    c.problems = {"missing"};
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("failed cells are recorded and the run continues")
{
    TempDir tmp("partial");
    auto c = small_config(tmp.path);
    c.problems = {"BK1", "SP1"};
    c.variants = {PruneMode::Classic};
    c.init_mode = InitMode::Point;
    c.init_point = {-5.0, -5.0}; // outside the SP1 box
    const auto out = run_experiment(c);
    REQUIRE(out.failures.size() == 1);
    CHECK(out.failures[0].rfind("SP1/classic", 0) == 0);
    CHECK(fs::exists(tmp.path / "fronts" / "BK1__classic.txt"));
    REQUIRE(out.metrics.size() == 2);
    CHECK(is_failure(out.metrics[1].purity));
}

TEST_CASE("output root from the environment")
{
    ::setenv("DMS_OUTPUT_ROOT", "/tmp/dms-root", 1);
    CHECK(resolve_output_dir("runs/a") == fs::path("/tmp/dms-root/runs/a"));
    CHECK(resolve_output_dir("/abs") == fs::path("/abs"));
    ::unsetenv("DMS_OUTPUT_ROOT");
    CHECK(resolve_output_dir("runs/a") == fs::path("runs/a"));
}

TEST_CASE("malformed front files report the line")
{
    TempDir tmp("malformed");
    fs::create_directories(tmp.path);
    {
        std::ofstream os(tmp.path / "f.txt");
        os << "0 1\n1 zero\n";
    }
    CHECK_THROWS_WITH_AS(read_front_file((tmp.path / "f.txt").string()),
                         doctest::Contains("line 2"), ParseError);
}
