// Command-line front end: run, list-problems, score, profile.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dms/experiment.hpp"

namespace fs = std::filesystem;

namespace
{

int run_command(const std::optional<std::string>& config_path,
                const std::map<std::string, std::string>& overrides)
{
    dms::ExperimentConfig config;
    if (config_path)
    {
        config = dms::read_config_file(*config_path);
    }
    for (const auto& [key, value] : overrides)
    {
        dms::apply_setting(config, key, value);
    }
    const auto outcome = dms::run_experiment(config);
    std::cout << "wrote " << outcome.cells << " cells to " << outcome.directory.string() << '\n';
    for (const auto& s : outcome.skipped_profiles)
    {
        std::cerr << "profile skipped: " << s << '\n';
    }
    for (const auto& f : outcome.failures)
    {
        std::cerr << "failed: " << f << '\n';
    }
    return outcome.failures.empty() ? 0 : 1;
}

int score_command(const std::vector<std::string>& files,
                  const std::optional<std::string>& reference, const std::string& problem,
                  const std::optional<std::string>& output)
{
    std::vector<std::pair<std::string, Eigen::MatrixXd>> fronts;
    for (const auto& f : files)
    {
        try
        {
            fronts.emplace_back(fs::path(f).stem().string(), dms::read_front_file(f));
        }
        catch (const dms::ParseError& e)
        {
            std::cerr << f << ": " << e.what() << '\n';
            return 2;
        }
    }
    std::optional<Eigen::MatrixXd> ref;
    if (reference)
    {
        ref = dms::read_front_file(*reference);
    }
    const auto records = dms::score_fronts(problem, fronts, ref);
    if (output)
    {
        std::ofstream os(*output, std::ios::binary);
        if (!os)
        {
            std::cerr << "cannot write '" << *output << "'\n";
            return 1;
        }
        dms::write_metric_records(os, records);
    }
    else
    {
        dms::write_metric_records(std::cout, records);
    }
    return 0;
}

int profile_command(const std::vector<std::string>& reports, const std::string& output,
                    double tau_max)
{
    std::vector<dms::MetricRecord> records;
    for (const auto& path : reports)
    {
        std::ifstream is(path);
        if (!is)
        {
            std::cerr << "cannot open '" << path << "'\n";
            return 1;
        }
        auto part = dms::read_metric_records(is);
        records.insert(records.end(), part.begin(), part.end());
    }
    const auto dir = dms::resolve_output_dir(output);
    for (const auto& s : dms::emit_profiles(records, dir, tau_max))
    {
        std::cerr << "profile skipped: " << s << '\n';
    }
    std::cout << "wrote profiles to " << dir.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Direct MultiSearch experiments"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a solver x problem experiment");
    std::optional<std::string> config_path;
    run->add_option("-c,--config", config_path, "key = value configuration file");
    std::map<std::string, std::string> overrides;
    const std::vector<std::pair<std::string, std::string>> keys = {
        {"problems", "Comma-separated problem ids, or 'all'"},
        {"variants", "Comma-separated variants: classic, prune-always, prune-adaptive"},
        {"budget", "Function evaluations per run"},
        {"seed", "Seed for random initialization"},
        {"output", "Output directory (relative paths honour DMS_OUTPUT_ROOT)"},
        {"init", "Initialization: center, line, random, point"},
        {"init_count", "Number of initial points for line/random"},
        {"init_point", "Comma-separated coordinates for init = point"},
        {"beta1", "Stepsize contraction lower coefficient"},
        {"beta2", "Stepsize contraction upper coefficient"},
        {"gamma", "Stepsize expansion coefficient"},
        {"initial_stepsize", "Initial stepsize (default 0.1 * widest box side)"},
        {"tau_max", "Right end of the profile plots"},
        {"threads", "Worker threads (0 = hardware concurrency)"},
    };
    for (const auto& [key, help] : keys)
    {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        run->add_option_function<std::string>(
            flag, [&overrides, key = key](const std::string& v) { overrides[key] = v; }, help);
    }

    // list-problems
    auto* list = app.add_subcommand("list-problems", "List the benchmark problems");

    // score
    auto* score = app.add_subcommand("score", "Score front files against each other");
    std::vector<std::string> front_files;
    std::optional<std::string> reference;
    std::string problem_label = "problem";
    std::optional<std::string> score_output;
    score->add_option("fronts", front_files, "Front files")->required()->check(CLI::ExistingFile);
    score->add_option("-r,--reference", reference, "Reference front file")
        ->check(CLI::ExistingFile);
    score->add_option("-p,--problem", problem_label, "Problem label for the report");
    score->add_option("-o,--output", score_output, "Report file (default stdout)");

    // profile
    auto* profile = app.add_subcommand("profile", "Performance profiles from metric reports");
    std::vector<std::string> reports;
    std::string profile_output = "profiles";
    double tau_max = 10.0;
    profile->add_option("reports", reports, "metrics.jsonl files")
        ->required()
        ->check(CLI::ExistingFile);
    profile->add_option("-o,--output", profile_output, "Output directory");
    profile->add_option("--tau-max", tau_max, "Right end of the plots")
        ->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            return run_command(config_path, overrides);
        }
        if (*list)
        {
            dms::list_problems(std::cout);
            return 0;
        }
        if (*score)
        {
            return score_command(front_files, reference, problem_label, score_output);
        }
        if (*profile)
        {
            return profile_command(reports, profile_output, tau_max);
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
