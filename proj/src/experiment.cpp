#include "dms/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace dms
{

namespace fs = std::filesystem;

namespace
{

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
    {
        return {};
    }
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ','))
    {
        item = trim(item);
        if (!item.empty())
        {
            out.push_back(item);
        }
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value)
{
    try
    {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size())
        {
            return v;
        }
    }
    catch (const std::exception&)
    {
    }
    throw ConfigError("setting '" + key + "': '" + value + "' is not a number");
}

std::int64_t parse_integer(const std::string& key, const std::string& value)
{
    try
    {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used == value.size())
        {
            return v;
        }
    }
    catch (const std::exception&)
    {
    }
    throw ConfigError("setting '" + key + "': '" + value + "' is not an integer");
}

std::string_view to_string(InitMode mode)
{
    switch (mode)
    {
    case InitMode::Center:
        return "center";
    case InitMode::Line:
        return "line";
    case InitMode::Random:
        return "random";
    case InitMode::Point:
        return "point";
    }
    return "unknown";
}

std::string join_reals(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        out += (i ? "," : "") + format_real(v[i]);
    }
    return out;
}

nlohmann::json metric_json(double v)
{
    return is_failure(v) ? nlohmann::json(nullptr) : nlohmann::json(v);
}

double metric_from_json(const nlohmann::json& j)
{
    return j.is_null() ? kMetricFailure : j.get<double>();
}

std::string box_text(const BoxDomain& box)
{
    const auto& lo = box.lower();
    const auto& hi = box.upper();
    if ((lo.array() == lo(0)).all() && (hi.array() == hi(0)).all())
    {
        return format_real(lo(0)) + " " + format_real(hi(0));
    }
    std::vector<double> l(lo.data(), lo.data() + lo.size());
    std::vector<double> h(hi.data(), hi.data() + hi.size());
    return join_reals(l) + " " + join_reals(h);
}

} // namespace

//------------------------------------------------------------------------------
// Configuration
//------------------------------------------------------------------------------

void ExperimentConfig::validate() const
{
    if (problems.empty())
    {
        throw ConfigError("at least one problem is required");
    }
    if (variants.empty())
    {
        throw ConfigError("at least one variant is required");
    }
    if (budget <= 0)
    {
        throw ConfigError("budget must be positive");
    }
    if (init_count < 1)
    {
        throw ConfigError("init_count must be at least 1");
    }
    if (init_mode == InitMode::Point && init_point.empty())
    {
        throw ConfigError("init = point requires init_point");
    }
    if (!(tau_max > 1.0))
    {
        throw ConfigError("tau_max must exceed 1");
    }
}

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value)
{
    if (key == "problems")
    {
        config.problems = split_list(value);
    }
    else if (key == "variants")
    {
        config.variants.clear();
        for (const auto& v : split_list(value))
        {
            config.variants.push_back(parse_prune_mode(v));
        }
    }
    else if (key == "budget")
    {
        config.budget = parse_integer(key, value);
    }
    else if (key == "seed")
    {
        const auto s = parse_integer(key, value);
        if (s < 0)
        {
            throw ConfigError("seed must be nonnegative");
        }
        config.seed = static_cast<std::uint64_t>(s);
    }
    else if (key == "output")
    {
        config.output_dir = value;
    }
    else if (key == "init")
    {
        if (value == "center")
            config.init_mode = InitMode::Center;
        else if (value == "line")
            config.init_mode = InitMode::Line;
        else if (value == "random")
            config.init_mode = InitMode::Random;
        else if (value == "point")
            config.init_mode = InitMode::Point;
        else
            throw ConfigError("init must be one of center, line, random, point");
    }
    else if (key == "init_count")
    {
        config.init_count = parse_integer(key, value);
    }
    else if (key == "init_point")
    {
        config.init_point.clear();
        for (const auto& v : split_list(value))
        {
            config.init_point.push_back(parse_real(key, v));
        }
    }
    else if (key == "beta1")
    {
        config.beta1 = parse_real(key, value);
    }
    else if (key == "beta2")
    {
        config.beta2 = parse_real(key, value);
    }
    else if (key == "gamma")
    {
        config.gamma = parse_real(key, value);
    }
    else if (key == "initial_stepsize")
    {
        config.initial_stepsize = parse_real(key, value);
    }
    else if (key == "tau_max")
    {
        config.tau_max = parse_real(key, value);
    }
    else if (key == "threads")
    {
        const auto t = parse_integer(key, value);
        if (t < 0)
        {
            throw ConfigError("threads must be nonnegative");
        }
        config.threads = static_cast<unsigned>(t);
    }
    else
    {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

ExperimentConfig read_config(std::istream& is, ExperimentConfig base)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
        {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ParseError("expected 'key = value'", lineno);
        }
        apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

ExperimentConfig read_config_file(const std::string& path, ExperimentConfig base)
{
    std::ifstream is(path);
    if (!is)
    {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return read_config(is, std::move(base));
}

void write_config(std::ostream& os, const ExperimentConfig& config)
{
    std::string problems, variants;
    for (const auto& p : config.problems)
    {
        problems += (problems.empty() ? "" : ",") + p;
    }
    for (auto v : config.variants)
    {
        variants += (variants.empty() ? "" : ",") + std::string(to_string(v));
    }
    os << "problems = " << problems << '\n'
       << "variants = " << variants << '\n'
       << "budget = " << config.budget << '\n'
       << "seed = " << config.seed << '\n'
       << "output = " << config.output_dir << '\n'
       << "init = " << to_string(config.init_mode) << '\n'
       << "init_count = " << config.init_count << '\n';
    if (!config.init_point.empty())
    {
        os << "init_point = " << join_reals(config.init_point) << '\n';
    }
    auto opt = [&os](const char* key, const std::optional<double>& v) {
        if (v)
        {
            os << key << " = " << format_real(*v) << '\n';
        }
    };
    opt("beta1", config.beta1);
    opt("beta2", config.beta2);
    opt("gamma", config.gamma);
    opt("initial_stepsize", config.initial_stepsize);
    os << "tau_max = " << format_real(config.tau_max) << '\n';
}

std::vector<const MooProblem*> resolve_problems(const std::vector<std::string>& ids)
{
    std::vector<const MooProblem*> out;
    for (const auto& id : ids)
    {
        if (id == "all")
        {
            for (const auto& p : catalog())
            {
                out.push_back(&p);
            }
            continue;
        }
        const MooProblem* p = find_problem(id);
        if (!p)
        {
            std::string valid;
            for (const auto& q : catalog())
            {
                valid += (valid.empty() ? "" : ", ") + q.id();
            }
            throw ConfigError("unknown problem '" + id + "'; valid ids: " + valid);
        }
        if (std::find(out.begin(), out.end(), p) == out.end())
        {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<DecisionPoint> initial_points_for(const ExperimentConfig& config,
                                              const MooProblem& problem)
{
    const auto& box = problem.domain();
    switch (config.init_mode)
    {
    case InitMode::Center:
        return initial_points_center(box);
    case InitMode::Line:
        return initial_points_line(box, config.init_count);
    case InitMode::Random:
        return initial_points_random(box, config.init_count, config.seed);
    case InitMode::Point:
        if (static_cast<Index>(config.init_point.size()) != problem.dimension())
        {
            throw ConfigError("init_point has " + std::to_string(config.init_point.size()) +
                              " values but '" + problem.id() + "' has dimension " +
                              std::to_string(problem.dimension()));
        }
        return {Eigen::Map<const Eigen::VectorXd>(config.init_point.data(),
                                                  problem.dimension())};
    }
    return {};
}

SolverConfig solver_config_for(const ExperimentConfig& config, PruneMode variant)
{
    SolverConfig sc;
    sc.beta1 = config.beta1.value_or(sc.beta1);
    sc.beta2 = config.beta2.value_or(config.beta1.value_or(sc.beta2));
    sc.gamma = config.gamma.value_or(sc.gamma);
    sc.initial_stepsize = config.initial_stepsize;
    sc.max_evaluations = config.budget;
    sc.prune_mode = variant;
    sc.seed = config.seed;
    return sc;
}

void list_problems(std::ostream& os)
{
    for (const auto& p : catalog())
    {
        os << p.id() << ' ' << p.dimension() << ' ' << p.num_objectives() << ' '
           << box_text(p.domain()) << '\n';
    }
}

//------------------------------------------------------------------------------
// Metrics records
//------------------------------------------------------------------------------

double MetricRecord::value(MetricKind kind) const
{
    switch (kind)
    {
    case MetricKind::Purity:
        return purity;
    case MetricKind::Hypervolume:
        return hypervolume;
    case MetricKind::Gamma:
        return gamma;
    case MetricKind::Delta:
        return delta;
    }
    return kMetricFailure;
}

void write_metric_records(std::ostream& os, const std::vector<MetricRecord>& records)
{
    for (const auto& r : records)
    {
        nlohmann::ordered_json j;
        j["problem"] = r.problem;
        j["solver"] = r.solver;
        j["purity"] = metric_json(r.purity);
        j["gamma"] = metric_json(r.gamma);
        j["delta"] = metric_json(r.delta);
        j["hypervolume"] = metric_json(r.hypervolume);
        j["front_size"] = r.front_size;
        os << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
    }
}

std::vector<MetricRecord> read_metric_records(std::istream& is)
{
    std::vector<MetricRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (trim(line).empty())
        {
            continue;
        }
        try
        {
            const auto j = nlohmann::json::parse(line);
            MetricRecord r;
            r.problem = j.at("problem").get<std::string>();
            r.solver = j.at("solver").get<std::string>();
            r.purity = metric_from_json(j.at("purity"));
            r.gamma = metric_from_json(j.at("gamma"));
            r.delta = metric_from_json(j.at("delta"));
            r.hypervolume = metric_from_json(j.at("hypervolume"));
            r.front_size = j.value("front_size", Index{0});
            out.push_back(std::move(r));
        }
        catch (const nlohmann::json::exception& e)
        {
            throw ParseError(std::string("malformed metric record: ") + e.what(), lineno);
        }
    }
    return out;
}

std::vector<MetricRecord>
score_fronts(const std::string& problem,
             const std::vector<std::pair<std::string, Eigen::MatrixXd>>& fronts,
             const std::optional<Eigen::MatrixXd>& reference)
{
    std::vector<Front> parsed;
    std::vector<MetricRecord> records;
    for (const auto& [label, rows] : fronts)
    {
        parsed.push_back(rows.rows() == 0 ? Front() : Front(rows));
        MetricRecord r;
        r.problem = problem;
        r.solver = label;
        r.front_size = parsed.back().size();
        records.push_back(std::move(r));
    }

    std::vector<Front> everything = parsed;
    ReferenceFront ref;
    if (reference && reference->rows() > 0)
    {
        ref = Front(*reference);
        everything.push_back(ref);
    }
    else
    {
        ref = build_reference_front(parsed);
    }
    if (ref.empty())
    {
        return records;
    }

    const Extremes extremes = extreme_points(ref);
    const Eigen::VectorXd upper = reference_point(everything);
    const Eigen::VectorXd ideal = ideal_point(everything);

    for (std::size_t i = 0; i < parsed.size(); ++i)
    {
        const Front& f = parsed[i];
        auto& r = records[i];
        if (f.empty())
        {
            continue;
        }
        if (f.num_objectives() != ref.num_objectives())
        {
            throw DimensionError("front '" + r.solver + "' has " +
                                 std::to_string(f.num_objectives()) + " objectives, expected " +
                                 std::to_string(ref.num_objectives()));
        }
        r.purity = purity(f, ref);
        r.gamma = gamma_spread(f, extremes);
        r.delta = delta_spread(f, extremes);
        const Index p = f.num_objectives();
        r.hypervolume = (p == 2 || p == 3) ? scaled_hypervolume(f, upper, ideal) : kMetricFailure;
    }
    return records;
}

ProfileTable profile_table(const std::vector<MetricRecord>& records, MetricKind kind)
{
    ProfileTable table;
    for (const auto& r : records)
    {
        if (std::find(table.problems.begin(), table.problems.end(), r.problem) ==
            table.problems.end())
        {
            table.problems.push_back(r.problem);
        }
        if (std::find(table.solvers.begin(), table.solvers.end(), r.solver) ==
            table.solvers.end())
        {
            table.solvers.push_back(r.solver);
        }
    }
    table.values = Eigen::MatrixXd::Constant(static_cast<Index>(table.problems.size()),
                                             static_cast<Index>(table.solvers.size()),
                                             kMetricFailure);
    for (const auto& r : records)
    {
        const auto i = std::find(table.problems.begin(), table.problems.end(), r.problem) -
                       table.problems.begin();
        const auto s = std::find(table.solvers.begin(), table.solvers.end(), r.solver) -
                       table.solvers.begin();
        table.values(i, s) = r.value(kind);
    }
    return table;
}

std::vector<std::string> emit_profiles(const std::vector<MetricRecord>& records,
                                       const fs::path& dir, double tau_max)
{
    fs::create_directories(dir);
    std::vector<std::string> skipped;
    for (auto kind : kAllMetrics)
    {
        const std::string name(to_string(kind));
        const auto table = invert_for_profile(profile_table(records, kind), kind);
        if (table.values.size() == 0 || table.values.array().isNaN().all())
        {
            skipped.push_back(name + ": no successful cell");
            continue;
        }
        const auto curves = compute_profiles(table);
        emit_profile_plot(curves, (dir / name).string(), "Performance profile: " + name, tau_max);
    }
    return skipped;
}

//------------------------------------------------------------------------------
// Experiment
//------------------------------------------------------------------------------

fs::path resolve_output_dir(const std::string& dir)
{
    fs::path out(dir);
    if (out.is_relative())
    {
        if (const char* root = std::getenv("DMS_OUTPUT_ROOT"); root && *root)
        {
            out = fs::path(root) / out;
        }
    }
    return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const auto problems = resolve_problems(config.problems);

    ExperimentOutcome outcome;
    outcome.directory = resolve_output_dir(config.output_dir);
    fs::create_directories(outcome.directory / "fronts");
    fs::create_directories(outcome.directory / "reference");
    {
        std::ofstream os(outcome.directory / "config.txt", std::ios::binary);
        write_config(os, config);
    }

    struct Cell
    {
        const MooProblem* problem;
        PruneMode variant;
        std::optional<RunResult> result;
        std::string error;
    };
    std::vector<Cell> cells;
    for (const auto* p : problems)
    {
        for (auto v : config.variants)
        {
            cells.push_back({p, v, std::nullopt, {}});
        }
    }
    outcome.cells = cells.size();

    // Cells are independent; each worker claims the next unclaimed index.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++)
        {
            auto& cell = cells[i];
            try
            {
                cell.result = solve(*cell.problem, solver_config_for(config, cell.variant),
                                    initial_points_for(config, *cell.problem));
            }
            catch (const std::exception& e)
            {
                cell.error = e.what();
            }
        }
    };
    unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cells.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
        {
            pool.emplace_back(worker);
        }
    }

    std::ofstream summaries(outcome.directory / "summaries.jsonl", std::ios::binary);
    for (const auto* p : problems)
    {
        std::vector<std::pair<std::string, Eigen::MatrixXd>> fronts;
        std::vector<std::string> failed_labels;
        for (const auto& cell : cells)
        {
            if (cell.problem != p)
            {
                continue;
            }
            const std::string label(to_string(cell.variant));
            if (!cell.result)
            {
                outcome.failures.push_back(p->id() + "/" + label + ": " + cell.error);
                nlohmann::ordered_json j;
                j["problem"] = p->id();
                j["variant"] = label;
                j["error"] = cell.error;
                summaries << j.dump() << '\n';
                failed_labels.push_back(label);
                continue;
            }
            write_run_summary(summaries, p->id(), cell.variant, *cell.result);
            Eigen::MatrixXd rows = cell.result->final_front.objective_matrix();
            write_front_file((outcome.directory / "fronts" / (p->id() + "__" + label + ".txt")).string(),
                             rows);
            fronts.emplace_back(label, std::move(rows));
        }

        auto records = fronts.empty() ? std::vector<MetricRecord>{} : score_fronts(p->id(), fronts);
        if (!fronts.empty())
        {
            std::vector<Front> parsed;
            for (const auto& f : fronts)
            {
                parsed.emplace_back(f.second);
            }
            write_front_file((outcome.directory / "reference" / (p->id() + ".txt")).string(),
                             build_reference_front(parsed).points());
        }
        for (const auto& label : failed_labels)
        {
            records.push_back({p->id(), label});
        }
        outcome.metrics.insert(outcome.metrics.end(), records.begin(), records.end());
    }

    {
        std::ofstream os(outcome.directory / "metrics.jsonl", std::ios::binary);
        write_metric_records(os, outcome.metrics);
    }
    outcome.skipped_profiles =
        emit_profiles(outcome.metrics, outcome.directory / "profiles", config.tau_max);
    return outcome;
}

} // namespace dms
