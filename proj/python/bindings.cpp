#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nsgafh/fh_archive.hpp"
#include "nsgafh/harness.hpp"
#include "nsgafh/metrics.hpp"
#include "nsgafh/nsga2.hpp"
#include "nsgafh/problems.hpp"

namespace py = pybind11;
using namespace nsgafh;

namespace {

// Python evaluators return (f, cv); cv may be omitted for unconstrained problems.
ProblemSpec python_problem(std::string name, std::vector<double> lower, std::vector<double> upper, std::size_t num_objectives,
                           std::size_t num_constraints, py::function evaluate) {
    ProblemSpec p;
    p.name = std::move(name);
    p.version = "python";
    p.num_variables = lower.size();
    p.num_objectives = num_objectives;
    p.num_constraints = num_constraints;
    p.lower = std::move(lower);
    p.upper = std::move(upper);
    p.evaluator = [evaluate](const std::vector<double>& x) {
        py::object out = evaluate(x);
        Evaluation e;
        if (py::isinstance<py::tuple>(out)) {
            auto t = out.cast<py::tuple>();
            if (t.size() != 2) throw ContractViolation("evaluator must return f or (f, cv)");
            e.f = t[0].cast<std::vector<double>>();
            e.cv = t[1].cast<std::vector<double>>();
        } else {
            e.f = out.cast<std::vector<double>>();
        }
        return e;
    };
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_nsgafh, m) {
    m.doc() = "NSGA-II with a fixed-hypergrid external archive";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<ArchiveFullError>(m, "ArchiveFullError", PyExc_RuntimeError);
    py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Solution>(m, "Solution")
        .def(py::init<>())
        .def(py::init([](std::vector<double> x, std::vector<double> f, std::vector<double> cv) {
                 return Solution{std::move(x), std::move(f), std::move(cv)};
             }),
             py::arg("x"), py::arg("f"), py::arg("cv") = std::vector<double>{})
        .def_readwrite("x", &Solution::x)
        .def_readwrite("f", &Solution::f)
        .def_readwrite("cv", &Solution::cv)
        .def_readwrite("rank", &Solution::rank)
        .def_readwrite("crowding", &Solution::crowding)
        .def_property_readonly("feasible", &Solution::feasible)
        .def_property_readonly("total_violation", &Solution::total_violation)
        .def(py::self == py::self)
        .def("__repr__", [](const Solution& s) {
            return "Solution(x=" + py::repr(py::cast(s.x)).cast<std::string>() +
                   ", f=" + py::repr(py::cast(s.f)).cast<std::string>() + ")";
        });

    m.def("dominates", py::overload_cast<const Solution&, const Solution&>(&dominates), py::arg("a"), py::arg("b"));
    m.def("identical", &identical, py::arg("a"), py::arg("b"), py::arg("eps") = kDefaultIdenticalEps);

    py::class_<ProblemSpec>(m, "Problem")
        .def(py::init(&python_problem), py::arg("name"), py::arg("lower"), py::arg("upper"), py::arg("num_objectives"),
             py::arg("num_constraints") = 0, py::arg("evaluate"))
        .def_readonly("name", &ProblemSpec::name)
        .def_readonly("version", &ProblemSpec::version)
        .def_readonly("num_variables", &ProblemSpec::num_variables)
        .def_readonly("num_objectives", &ProblemSpec::num_objectives)
        .def_readonly("num_constraints", &ProblemSpec::num_constraints)
        .def_readonly("lower", &ProblemSpec::lower)
        .def_readonly("upper", &ProblemSpec::upper)
        .def("evaluate", &ProblemSpec::evaluate, py::arg("x"));

    m.def("problem", [](const std::string& name, double delay_ms) { return problems::with_delay(problems::by_name(name), delay_ms); },
          py::arg("name"), py::arg("delay_ms") = 0.0);
    m.def("problem_names", [] {
        std::vector<std::string> names;
        for (const auto& entry : problems::catalog()) names.push_back(entry.name);
        return names;
    });

    py::class_<HypergridConfig>(m, "HypergridConfig")
        .def(py::init([](std::vector<double> f_ref, std::vector<double> delta_f, std::size_t n_cells_max, std::size_t n_sols_max,
                         double eps) {
                 HypergridConfig g{std::move(f_ref), std::move(delta_f), n_cells_max, n_sols_max, eps};
                 g.validate();
                 return g;
             }),
             py::arg("f_ref"), py::arg("delta_f"), py::arg("n_cells_max") = 1000, py::arg("n_sols_max") = 10,
             py::arg("eps_identical") = kDefaultIdenticalEps)
        .def_readwrite("f_ref", &HypergridConfig::f_ref)
        .def_readwrite("delta_f", &HypergridConfig::delta_f)
        .def_readwrite("n_cells_max", &HypergridConfig::n_cells_max)
        .def_readwrite("n_sols_max", &HypergridConfig::n_sols_max)
        .def_readwrite("eps_identical", &HypergridConfig::eps_identical);

    m.def("cell_index", &cell_index, py::arg("f"), py::arg("config"));

    py::enum_<UpdateOutcome>(m, "UpdateOutcome")
        .value("rejected_infeasible", UpdateOutcome::rejected_infeasible)
        .value("rejected_dominated", UpdateOutcome::rejected_dominated)
        .value("rejected_identical", UpdateOutcome::rejected_identical)
        .value("inserted", UpdateOutcome::inserted)
        .value("inserted_with_eviction", UpdateOutcome::inserted_with_eviction)
        .value("inserted_after_pack", UpdateOutcome::inserted_after_pack)
        .value("archive_full", UpdateOutcome::archive_full);

    py::class_<ArchiveStats>(m, "ArchiveStats")
        .def_readonly("filled", &ArchiveStats::filled)
        .def_readonly("empty", &ArchiveStats::empty)
        .def_readonly("total", &ArchiveStats::total)
        .def("__repr__", [](const ArchiveStats& s) {
            return "ArchiveStats(filled=" + std::to_string(s.filled) + ", empty=" + std::to_string(s.empty) +
                   ", total=" + std::to_string(s.total) + ")";
        });

    py::class_<Archive>(m, "Archive")
        .def(py::init<HypergridConfig, std::uint64_t>(), py::arg("config"), py::arg("seed") = 0)
        .def("update", &Archive::update, py::arg("candidate"))
        .def("pack", &Archive::pack)
        .def("stats", &Archive::stats)
        .def("extract_solutions", &Archive::extract_solutions)
        .def("cell_indices",
             [](const Archive& a) {
                 std::vector<CellIndex> out;
                 for (const Cell& c : a.cells()) out.push_back(c.index);
                 return out;
             })
        .def_property_readonly("pack_count", &Archive::pack_count)
        .def_property_readonly("config", &Archive::config)
        .def("__len__", &Archive::size);

    py::class_<EngineParams>(m, "EngineParams")
        .def(py::init<>())
        .def_readwrite("population_size", &EngineParams::population_size)
        .def_readwrite("generations", &EngineParams::generations)
        .def_readwrite("crossover_probability", &EngineParams::crossover_probability)
        .def_readwrite("mutation_probability", &EngineParams::mutation_probability)
        .def_readwrite("eta_c", &EngineParams::eta_c)
        .def_readwrite("eta_m", &EngineParams::eta_m)
        .def_readwrite("sbx_variable_probability", &EngineParams::sbx_variable_probability)
        .def_readwrite("seed", &EngineParams::seed);

    py::class_<GenerationTrace>(m, "GenerationTrace")
        .def_readonly("generation", &GenerationTrace::generation)
        .def_readonly("archive_stats", &GenerationTrace::archive_stats)
        .def_readonly("packed", &GenerationTrace::packed)
        .def_readonly("archive_full_events", &GenerationTrace::archive_full_events);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("final_population", &RunResult::final_population)
        .def_readonly("archive", &RunResult::archive)
        .def_readonly("trace", &RunResult::trace)
        .def_readonly("populations", &RunResult::populations)
        .def_readonly("archive_full_events", &RunResult::archive_full_events)
        .def_readonly("total_seconds", &RunResult::total_seconds);

    m.def(
        "evolve",
        [](const ProblemSpec& problem, const EngineParams& params, std::optional<HypergridConfig> archive, bool strict,
           bool record_populations) {
            EvolveOptions opts;
            opts.archive = std::move(archive);
            opts.full_policy = strict ? ArchiveFullPolicy::strict : ArchiveFullPolicy::warn_and_continue;
            opts.record_populations = record_populations;
            return evolve(problem, params, opts);
        },
        py::arg("problem"), py::arg("params"), py::arg("archive") = py::none(), py::arg("strict_archive_full") = false,
        py::arg("record_populations") = false);

    py::module_ metrics = m.def_submodule("metrics");
    py::class_<metrics::ReferenceFront>(metrics, "ReferenceFront")
        .def_readonly("points", &metrics::ReferenceFront::points)
        .def_readonly("grid_per_dim", &metrics::ReferenceFront::grid_per_dim)
        .def_readonly("problem", &metrics::ReferenceFront::problem)
        .def_readonly("version", &metrics::ReferenceFront::version);
    metrics.def("nondominated_indices", &metrics::nondominated_indices, py::arg("points"));
    metrics.def("nondominated_subset", &metrics::nondominated_subset, py::arg("population"));
    metrics.def("build_reference_front", &metrics::build_reference_front, py::arg("problem"), py::arg("grid_per_dim"),
                py::arg("max_evaluations") = 50'000'000ULL);
    metrics.def("generational_distance",
                py::overload_cast<const std::vector<metrics::Point>&, const metrics::ReferenceFront&>(
                    &metrics::generational_distance),
                py::arg("front"), py::arg("reference"));
    metrics.def("generational_distance",
                py::overload_cast<const std::vector<Solution>&, const metrics::ReferenceFront&>(&metrics::generational_distance),
                py::arg("front"), py::arg("reference"));

    py::module_ h = m.def_submodule("harness");
    h.def(
        "run",
        [](const std::string& config_json) {
            const auto report = harness::run(harness::config_from_json(nlohmann::json::parse(config_json)));
            return report.report_file;
        },
        py::arg("config_json"), "Runs a JSON experiment config and returns the path of report.json.");
    h.def(
        "compare_timing",
        [](const std::string& config_json) {
            auto [plain, fh] = harness::make_timing_pair(harness::config_from_json(nlohmann::json::parse(config_json)));
            return harness::compare_timing(plain, fh).to_csv();
        },
        py::arg("config_json"));
    h.def("default_config", [] { return harness::to_json(harness::RunConfig{}).dump(); });
}
