#ifndef NSGAFH_HARNESS_HPP
#define NSGAFH_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsgafh/fh_archive.hpp"
#include "nsgafh/nsga2.hpp"

namespace nsgafh::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment. Every field has a default; see README for the file schema.
struct RunConfig {
    std::string problem = "vnt";
    EngineParams engine;
    bool archive = true;
    /// Empty vectors select the problem's default grid.
    std::vector<double> f_ref;
    std::vector<double> delta_f;
    std::size_t n_cells_max = 1000;
    std::size_t n_sols_max = 10;
    double eps_identical = kDefaultIdenticalEps;
    bool strict_archive_full = false;
    double delay_ms = 0.0;

    std::size_t repetitions = 1;
    std::string output_dir = "results";
    bool trace_fronts = true;
    bool trace_cells = true;
    /// Wall-clock data makes output trees non-reproducible, so it is opt-in.
    bool trace_timings = false;

    bool reference_front = false;
    std::size_t reference_grid = 501;
    /// Empty means "<output_dir>/reference".
    std::string reference_cache_dir;

    std::vector<std::size_t> timing_generations{100, 200, 300, 400};
    std::size_t timing_repeats = 3;

    void validate() const;
    /// Hypergrid with problem defaults filled in for empty f_ref / delta_f.
    HypergridConfig hypergrid() const;
    ProblemSpec make_problem() const;
    std::filesystem::path reference_dir() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
/// Rejects unknown keys and wrongly typed values with ConfigError.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Default (f_ref, delta_f) for a catalog problem.
HypergridConfig default_hypergrid(const std::string& problem);

struct RepetitionReport {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::filesystem::path directory;
    std::vector<std::filesystem::path> files;
    std::size_t population_front_size = 0;
    std::optional<std::size_t> archive_size;
    std::size_t archive_full_events = 0;
    std::optional<double> gd_population;
    std::optional<double> gd_archive;
    double total_seconds = 0.0;
    double evaluation_seconds = 0.0;
    double archive_seconds = 0.0;
    double engine_seconds = 0.0;
};

struct RunReport {
    std::filesystem::path output_dir;
    std::filesystem::path report_file;
    std::vector<RepetitionReport> repetitions;
};

/// Runs `repetitions` seeded repetitions (seed_i = seed + i) and writes the
/// requested artifacts under output_dir. Throws ArchiveFullError in strict mode.
RunReport run(const RunConfig& config);

/// Single seeded run with the config's problem and grid, no file output.
RunResult run_once(const RunConfig& config, std::uint64_t seed, bool record_populations = false);

// CSV writers. Field order is fixed: x..., f..., cv... and, for archive rows,
// the cell index tuple first.
void write_population_csv(std::ostream& out, const std::vector<Solution>& pop);
void write_archive_csv(std::ostream& out, const Archive& archive);

/// generation,filled,empty,total,packed_this_gen. Throws std::logic_error if
/// the run carried no archive, so no cell statistics exist.
std::string emit_cell_trace(const RunResult& result);

std::string emit_timing_trace(const RunResult& result);

struct TimingRow {
    std::size_t generations = 0;
    double plain_seconds = 0.0;
    double fh_seconds = 0.0;
    double ratio() const noexcept { return fh_seconds / plain_seconds; }
};

struct TimingTable {
    std::vector<TimingRow> rows;
    std::string to_csv() const;
    std::string to_text() const;
};

/// Archive-off / archive-on copies of a config.
std::pair<RunConfig, RunConfig> make_timing_pair(const RunConfig& config);

/// Times both configs at every generation count (best of timing_repeats).
/// The configs must differ only in archive presence.
TimingTable compare_timing(const RunConfig& plain, const RunConfig& fh);

}  // namespace nsgafh::harness

#endif
