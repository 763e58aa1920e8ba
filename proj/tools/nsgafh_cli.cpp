// nsgafh: run NSGA-II / NSGA-II-FH experiments from a JSON config.
//
//   nsgafh run <config> [--out DIR] [--seed S] [--reps K] [--strict-archive-full]
//   nsgafh compare-timing <config> [--out FILE]
//   nsgafh reference-front <problem> --grid G [--out FILE]
//
// Exit codes: 0 success, 1 config error, 2 runtime failure, 3 archive full
// in strict mode.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "nsgafh/harness.hpp"
#include "nsgafh/metrics.hpp"
#include "nsgafh/problems.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitArchiveFull = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace nsgafh;

    CLI::App app{"NSGA-II with a fixed-hypergrid external archive"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    bool strict = false;

    auto* run_cmd = app.add_subcommand("run", "Run seeded repetitions and write fronts and traces");
    run_cmd->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    run_cmd->add_option("--seed", seed, "Base seed (overrides seed)");
    run_cmd->add_option("--reps", reps, "Repetitions (overrides repetitions)");
    run_cmd->add_flag("--strict-archive-full", strict, "Abort the run when the archive is full");

    std::string timing_config;
    std::optional<std::string> timing_out;
    auto* timing_cmd = app.add_subcommand("compare-timing", "Time NSGA-II against NSGA-II-FH");
    timing_cmd->add_option("config", timing_config, "JSON config file")->required()->check(CLI::ExistingFile);
    timing_cmd->add_option("--out", timing_out, "Write the CSV table here as well");

    std::string problem_name;
    std::size_t grid = 501;
    std::optional<std::string> front_out;
    auto* ref_cmd = app.add_subcommand("reference-front", "Grid-sample a problem's Pareto front");
    ref_cmd->add_option("problem", problem_name, "Problem name")->required();
    ref_cmd->add_option("--grid", grid, "Points per decision dimension")->required();
    ref_cmd->add_option("--out", front_out, "CSV output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) {
            harness::RunConfig config = harness::load_config(config_path);
            if (out_dir) config.output_dir = *out_dir;
            if (seed) config.engine.seed = *seed;
            if (reps) config.repetitions = *reps;
            if (strict) config.strict_archive_full = true;
            const auto report = harness::run(config);
            for (const auto& rep : report.repetitions) {
                std::cout << "rep " << rep.index << " seed " << rep.seed << ": population front "
                          << rep.population_front_size;
                if (rep.archive_size) std::cout << ", archive " << *rep.archive_size;
                if (rep.archive_full_events) std::cout << " (archive full " << rep.archive_full_events << "x)";
                std::cout << '\n';
                if (rep.archive_full_events)
                    std::cerr << "warning: archive was full; " << rep.archive_full_events
                              << " candidates were not archived\n";
            }
            std::cout << "report: " << report.report_file.string() << '\n';
        } else if (*timing_cmd) {
            const harness::RunConfig config = harness::load_config(timing_config);
            const auto [plain, fh] = harness::make_timing_pair(config);
            const auto table = harness::compare_timing(plain, fh);
            std::cout << table.to_text();
            if (timing_out) {
                std::ofstream out(*timing_out);
                if (!out) throw std::runtime_error("cannot write " + *timing_out);
                out << table.to_csv();
            }
        } else if (*ref_cmd) {
            ProblemSpec problem;
            try {
                problem = problems::by_name(problem_name);
            } catch (const std::invalid_argument& e) {
                throw harness::ConfigError(e.what());
            }
            const auto front = metrics::build_reference_front(problem, grid);
            if (front_out) {
                metrics::write_front_csv(front, *front_out);
                std::cout << front.points.size() << " points written to " << *front_out << '\n';
            } else {
                metrics::write_front_csv(front, std::cout);
            }
        }
    } catch (const harness::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ContractViolation& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ArchiveFullError& e) {
        std::cerr << "archive full: " << e.what() << '\n';
        return kExitArchiveFull;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
