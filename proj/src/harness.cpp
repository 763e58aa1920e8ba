#include "nsgafh/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nsgafh/metrics.hpp"
#include "nsgafh/problems.hpp"

namespace nsgafh::harness {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_header(std::ostream& out, const char* prefix, std::size_t count, bool& first) {
    for (std::size_t i = 0; i < count; ++i) {
        out << (first ? "" : ",") << prefix << (i + 1);
        first = false;
    }
}

void write_values(std::ostream& out, const std::vector<double>& values, bool& first) {
    for (double v : values) {
        out << (first ? "" : ",") << fmt_double(v);
        first = false;
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

template <typename T>
T get_field(const nlohmann::json& doc, const char* key, const T& fallback) {
    const auto it = doc.find(key);
    if (it == doc.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

}  // namespace

HypergridConfig default_hypergrid(const std::string& problem) {
    HypergridConfig g;
    if (problem == "vnt") {
        g.f_ref = {0.0, 0.0, 0.0};
        g.delta_f = {0.1, 0.01, 0.1};
    } else if (problem == "ctp1") {
        g.f_ref = {0.0, 0.0};
        g.delta_f = {0.08, 0.1};
    } else {
        const std::size_t m = problems::by_name(problem).num_objectives;
        g.f_ref.assign(m, 0.0);
        g.delta_f.assign(m, 0.1);
    }
    return g;
}

HypergridConfig RunConfig::hypergrid() const {
    HypergridConfig g = default_hypergrid(problem);
    if (!f_ref.empty()) g.f_ref = f_ref;
    if (!delta_f.empty()) g.delta_f = delta_f;
    g.n_cells_max = n_cells_max;
    g.n_sols_max = n_sols_max;
    g.eps_identical = eps_identical;
    return g;
}

ProblemSpec RunConfig::make_problem() const {
    return problems::with_delay(problems::by_name(problem), delay_ms);
}

std::filesystem::path RunConfig::reference_dir() const {
    if (!reference_cache_dir.empty()) return reference_cache_dir;
    return std::filesystem::path(output_dir) / "reference";
}

void RunConfig::validate() const {
    ProblemSpec spec;
    try {
        spec = problems::by_name(problem);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    try {
        engine.validate();
        if (archive) {
            const HypergridConfig g = hypergrid();
            g.validate();
            if (g.num_objectives() != spec.num_objectives)
                throw ConfigError("hypergrid has " + std::to_string(g.num_objectives()) + " objectives but " + problem +
                                  " has " + std::to_string(spec.num_objectives));
        }
    } catch (const ContractViolation& e) {
        throw ConfigError(e.what());
    }
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (!(delay_ms >= 0.0)) throw ConfigError("delay_ms must be >= 0");
    if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
    if (reference_grid < 2) throw ConfigError("reference_grid must be >= 2");
    if (timing_repeats < 1) throw ConfigError("timing_repeats must be >= 1");
    for (std::size_t g : timing_generations) {
        if (g < 1) throw ConfigError("timing_generations entries must be >= 1");
    }
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["problem"] = c.problem;
    j["population_size"] = c.engine.population_size;
    j["generations"] = c.engine.generations;
    j["crossover_probability"] = c.engine.crossover_probability;
    if (c.engine.mutation_probability < 0.0) j["mutation_probability"] = nullptr;
    else j["mutation_probability"] = c.engine.mutation_probability;
    j["eta_c"] = c.engine.eta_c;
    j["eta_m"] = c.engine.eta_m;
    j["sbx_variable_probability"] = c.engine.sbx_variable_probability;
    j["seed"] = c.engine.seed;
    j["archive"] = c.archive;
    j["f_ref"] = c.f_ref;
    j["delta_f"] = c.delta_f;
    j["n_cells_max"] = c.n_cells_max;
    j["n_sols_max"] = c.n_sols_max;
    j["eps_identical"] = c.eps_identical;
    j["strict_archive_full"] = c.strict_archive_full;
    j["delay_ms"] = c.delay_ms;
    j["repetitions"] = c.repetitions;
    j["output_dir"] = c.output_dir;
    j["trace_fronts"] = c.trace_fronts;
    j["trace_cells"] = c.trace_cells;
    j["trace_timings"] = c.trace_timings;
    j["reference_front"] = c.reference_front;
    j["reference_grid"] = c.reference_grid;
    j["reference_cache_dir"] = c.reference_cache_dir;
    j["timing_generations"] = c.timing_generations;
    j["timing_repeats"] = c.timing_repeats;
    return j;
}

RunConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known = {
        "problem", "population_size", "generations", "crossover_probability", "mutation_probability",
        "eta_c", "eta_m", "sbx_variable_probability", "seed", "archive", "f_ref", "delta_f",
        "n_cells_max", "n_sols_max", "eps_identical", "strict_archive_full", "delay_ms", "repetitions",
        "output_dir", "trace_fronts", "trace_cells", "trace_timings", "reference_front", "reference_grid",
        "reference_cache_dir", "timing_generations", "timing_repeats"};
    for (const auto& [key, value] : doc.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config field '" + key + "'");
    }

    RunConfig c;
    c.problem = get_field(doc, "problem", c.problem);
    c.engine.population_size = get_field(doc, "population_size", c.engine.population_size);
    c.engine.generations = get_field(doc, "generations", c.engine.generations);
    c.engine.crossover_probability = get_field(doc, "crossover_probability", c.engine.crossover_probability);
    if (auto it = doc.find("mutation_probability"); it != doc.end() && !it->is_null())
        c.engine.mutation_probability = get_field(doc, "mutation_probability", 0.0);
    c.engine.eta_c = get_field(doc, "eta_c", c.engine.eta_c);
    c.engine.eta_m = get_field(doc, "eta_m", c.engine.eta_m);
    c.engine.sbx_variable_probability = get_field(doc, "sbx_variable_probability", c.engine.sbx_variable_probability);
    c.engine.seed = get_field(doc, "seed", c.engine.seed);
    c.archive = get_field(doc, "archive", c.archive);
    c.f_ref = get_field(doc, "f_ref", c.f_ref);
    c.delta_f = get_field(doc, "delta_f", c.delta_f);
    c.n_cells_max = get_field(doc, "n_cells_max", c.n_cells_max);
    c.n_sols_max = get_field(doc, "n_sols_max", c.n_sols_max);
    c.eps_identical = get_field(doc, "eps_identical", c.eps_identical);
    c.strict_archive_full = get_field(doc, "strict_archive_full", c.strict_archive_full);
    c.delay_ms = get_field(doc, "delay_ms", c.delay_ms);
    c.repetitions = get_field(doc, "repetitions", c.repetitions);
    c.output_dir = get_field(doc, "output_dir", c.output_dir);
    c.trace_fronts = get_field(doc, "trace_fronts", c.trace_fronts);
    c.trace_cells = get_field(doc, "trace_cells", c.trace_cells);
    c.trace_timings = get_field(doc, "trace_timings", c.trace_timings);
    c.reference_front = get_field(doc, "reference_front", c.reference_front);
    c.reference_grid = get_field(doc, "reference_grid", c.reference_grid);
    c.reference_cache_dir = get_field(doc, "reference_cache_dir", c.reference_cache_dir);
    c.timing_generations = get_field(doc, "timing_generations", c.timing_generations);
    c.timing_repeats = get_field(doc, "timing_repeats", c.timing_repeats);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

void write_population_csv(std::ostream& out, const std::vector<Solution>& pop) {
    const Solution* first_sol = pop.empty() ? nullptr : &pop.front();
    bool first = true;
    if (first_sol) {
        write_header(out, "x", first_sol->x.size(), first);
        write_header(out, "f", first_sol->f.size(), first);
        write_header(out, "cv", first_sol->cv.size(), first);
        out << ",rank";
    }
    out << '\n';
    for (const Solution& s : pop) {
        first = true;
        write_values(out, s.x, first);
        write_values(out, s.f, first);
        write_values(out, s.cv, first);
        out << ',' << s.rank << '\n';
    }
}

void write_archive_csv(std::ostream& out, const Archive& archive) {
    const std::size_t m = archive.config().num_objectives();
    bool first = true;
    write_header(out, "cell", m, first);
    const auto sols = archive.extract_solutions();
    if (!sols.empty()) {
        write_header(out, "x", sols.front().x.size(), first);
        write_header(out, "f", sols.front().f.size(), first);
        write_header(out, "cv", sols.front().cv.size(), first);
    }
    out << '\n';
    for (const Cell& cell : archive.cells()) {
        for (const Solution& s : cell.slots) {
            first = true;
            for (auto k : cell.index) {
                out << (first ? "" : ",") << k;
                first = false;
            }
            write_values(out, s.x, first);
            write_values(out, s.f, first);
            write_values(out, s.cv, first);
            out << '\n';
        }
    }
}

std::string emit_cell_trace(const RunResult& result) {
    if (!result.archive) throw std::logic_error("cell trace requested for a run without an archive");
    std::ostringstream out;
    out << "generation,filled,empty,total,packed_this_gen\n";
    for (const GenerationTrace& row : result.trace) {
        out << row.generation << ',' << row.archive_stats.filled << ',' << row.archive_stats.empty << ','
            << row.archive_stats.total << ',' << (row.packed ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string emit_timing_trace(const RunResult& result) {
    std::ostringstream out;
    out << "generation,evaluation_s,archive_s,engine_s\n";
    for (const GenerationTrace& row : result.trace) {
        out << row.generation << ',' << fmt_double(row.evaluation_seconds) << ',' << fmt_double(row.archive_seconds)
            << ',' << fmt_double(row.engine_seconds) << '\n';
    }
    return out.str();
}

RunResult run_once(const RunConfig& config, std::uint64_t seed, bool record_populations) {
    EngineParams params = config.engine;
    params.seed = seed;
    EvolveOptions opts;
    if (config.archive) opts.archive = config.hypergrid();
    opts.full_policy = config.strict_archive_full ? ArchiveFullPolicy::strict : ArchiveFullPolicy::warn_and_continue;
    opts.record_populations = record_populations;
    return evolve(config.make_problem(), params, opts);
}

RunReport run(const RunConfig& config) {
    config.validate();
    namespace fs = std::filesystem;
    RunReport report;
    report.output_dir = config.output_dir;
    std::error_code ec;
    fs::create_directories(report.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + config.output_dir + ": " + ec.message());

    std::optional<metrics::ReferenceFront> reference;
    if (config.reference_front) {
        metrics::ReferenceFrontCache cache(config.reference_dir());
        reference = cache.get(problems::by_name(config.problem), config.reference_grid);
    }

    nlohmann::json reps = nlohmann::json::array();
    for (std::size_t i = 0; i < config.repetitions; ++i) {
        RepetitionReport rep;
        rep.index = i;
        rep.seed = config.engine.seed + i;
        rep.directory = report.output_dir / ("rep_" + std::to_string(i));
        fs::create_directories(rep.directory);

        const RunResult result = run_once(config, rep.seed);
        const auto pop_front = metrics::nondominated_subset(result.final_population);
        rep.population_front_size = pop_front.size();
        rep.archive_full_events = result.archive_full_events;
        rep.total_seconds = result.total_seconds;
        rep.evaluation_seconds = result.evaluation_seconds;
        rep.archive_seconds = result.archive_seconds;
        rep.engine_seconds = result.engine_seconds;
        if (result.archive) rep.archive_size = result.archive->size();
        if (reference) {
            rep.gd_population = metrics::generational_distance(pop_front, *reference);
            if (result.archive && result.archive->size() > 0)
                rep.gd_archive = metrics::generational_distance(result.archive->extract_solutions(), *reference);
        }

        if (config.trace_fronts) {
            std::ostringstream pop;
            write_population_csv(pop, result.final_population);
            write_file(rep.directory / "population.csv", pop.str());
            rep.files.push_back(rep.directory / "population.csv");
            if (result.archive) {
                std::ostringstream arch;
                write_archive_csv(arch, *result.archive);
                write_file(rep.directory / "archive.csv", arch.str());
                rep.files.push_back(rep.directory / "archive.csv");
            }
        }
        if (config.trace_cells && result.archive) {
            write_file(rep.directory / "cells.csv", emit_cell_trace(result));
            rep.files.push_back(rep.directory / "cells.csv");
        }
        if (config.trace_timings) {
            write_file(rep.directory / "timings.csv", emit_timing_trace(result));
            rep.files.push_back(rep.directory / "timings.csv");
        }

        nlohmann::json r;
        r["index"] = rep.index;
        r["seed"] = rep.seed;
        nlohmann::json files = nlohmann::json::array();
        for (const auto& f : rep.files) files.push_back(fs::relative(f, report.output_dir).generic_string());
        r["files"] = files;
        r["population_front_size"] = rep.population_front_size;
        r["archive_size"] = rep.archive_size ? nlohmann::json(*rep.archive_size) : nlohmann::json(nullptr);
        r["archive_full_events"] = rep.archive_full_events;
        if (reference) {
            r["gd_population"] = *rep.gd_population;
            r["gd_archive"] = rep.gd_archive ? nlohmann::json(*rep.gd_archive) : nlohmann::json(nullptr);
        }
        if (config.trace_timings) {
            r["wall_clock"] = {{"total_s", rep.total_seconds},
                               {"evaluation_s", rep.evaluation_seconds},
                               {"archive_s", rep.archive_seconds},
                               {"engine_s", rep.engine_seconds}};
        }
        reps.push_back(std::move(r));
        report.repetitions.push_back(std::move(rep));
    }

    nlohmann::json doc;
    doc["config"] = to_json(config);
    doc["repetitions"] = reps;
    std::vector<std::size_t> pop_sizes;
    std::vector<std::size_t> arch_sizes;
    for (const auto& rep : report.repetitions) {
        pop_sizes.push_back(rep.population_front_size);
        if (rep.archive_size) arch_sizes.push_back(*rep.archive_size);
    }
    const auto median = [](std::vector<std::size_t> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? static_cast<double>(v[n / 2]) : 0.5 * static_cast<double>(v[n / 2 - 1] + v[n / 2]);
    };
    doc["summary"]["median_population_front_size"] = median(pop_sizes);
    doc["summary"]["median_archive_size"] = arch_sizes.empty() ? nlohmann::json(nullptr) : nlohmann::json(median(arch_sizes));
    report.report_file = report.output_dir / "report.json";
    write_file(report.report_file, doc.dump(2) + "\n");
    return report;
}

std::pair<RunConfig, RunConfig> make_timing_pair(const RunConfig& config) {
    RunConfig plain = config;
    plain.archive = false;
    RunConfig fh = config;
    fh.archive = true;
    return {plain, fh};
}

TimingTable compare_timing(const RunConfig& plain, const RunConfig& fh) {
    if (plain.archive || !fh.archive) throw ConfigError("compare_timing needs an archive-off and an archive-on config");
    RunConfig probe = plain;
    probe.archive = true;
    if (!(probe == fh)) throw ConfigError("timing configs may differ only in archive presence");
    fh.validate();
    if (fh.timing_generations.empty()) throw ConfigError("timing_generations must not be empty");

    TimingTable table;
    for (std::size_t gens : fh.timing_generations) {
        RunConfig a = plain;
        RunConfig b = fh;
        a.engine.generations = gens;
        b.engine.generations = gens;
        TimingRow row;
        row.generations = gens;
        row.plain_seconds = std::numeric_limits<double>::infinity();
        row.fh_seconds = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < fh.timing_repeats; ++r) {
            row.plain_seconds = std::min(row.plain_seconds, run_once(a, a.engine.seed).total_seconds);
            row.fh_seconds = std::min(row.fh_seconds, run_once(b, b.engine.seed).total_seconds);
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string TimingTable::to_csv() const {
    std::ostringstream out;
    out << "generations,nsga2_s,nsga2_fh_s,ratio\n";
    for (const auto& r : rows) {
        out << r.generations << ',' << fmt_double(r.plain_seconds) << ',' << fmt_double(r.fh_seconds) << ','
            << fmt_double(r.ratio()) << '\n';
    }
    return out.str();
}

std::string TimingTable::to_text() const {
    std::ostringstream out;
    out << std::setw(8) << "N_gen" << std::setw(14) << "NSGA-II [s]" << std::setw(16) << "NSGA-II-FH [s]"
        << std::setw(10) << "ratio" << '\n';
    out << std::fixed;
    for (const auto& r : rows) {
        out << std::setw(8) << r.generations << std::setw(14) << std::setprecision(4) << r.plain_seconds
            << std::setw(16) << r.fh_seconds << std::setw(10) << std::setprecision(3) << r.ratio() << '\n';
    }
    return out.str();
}

}  // namespace nsgafh::harness
