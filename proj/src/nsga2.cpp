#include "nsgafh/nsga2.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace nsgafh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t pick_other(Rng& rng, std::size_t n, std::size_t first) {
    auto b = static_cast<std::size_t>(rng.index(n - 1));
    return b >= first ? b + 1 : b;
}

const Solution& tournament(const std::vector<Solution>& pop, Rng& rng) {
    const auto a = static_cast<std::size_t>(rng.index(pop.size()));
    const std::size_t b = pick_other(rng, pop.size(), a);
    return crowded_tournament(pop[a], pop[b]);
}

void rank_and_crowd(std::vector<Solution>& pop) {
    for (const auto& front : fast_nondominated_sort(pop)) crowding_distance(pop, front);
}

}  // namespace

void EngineParams::validate() const {
    if (population_size < 4 || population_size % 2 != 0)
        throw ContractViolation("population size must be an even integer >= 4");
    if (generations < 1) throw ContractViolation("number of generations must be >= 1");
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0))
        throw ContractViolation("crossover probability must be in [0,1]");
    if (!(mutation_probability <= 1.0)) throw ContractViolation("mutation probability must be <= 1");
    if (!(eta_c > 0.0)) throw ContractViolation("eta_c must be > 0");
    if (!(eta_m > 0.0)) throw ContractViolation("eta_m must be > 0");
    if (!(sbx_variable_probability >= 0.0 && sbx_variable_probability <= 1.0))
        throw ContractViolation("sbx variable probability must be in [0,1]");
}

double EngineParams::mutation_probability_for(std::size_t num_variables) const noexcept {
    if (mutation_probability < 0.0) return 1.0 / static_cast<double>(num_variables);
    return mutation_probability;
}

std::uint64_t archive_seed(std::uint64_t engine_seed) noexcept {
    return mix_seed(engine_seed ^ 0xa5c4f1e0d3b29687ULL);
}

RunResult evolve(const ProblemSpec& problem, const EngineParams& params, const EvolveOptions& options) {
    problem.validate();
    params.validate();
    if (options.archive && options.archive->num_objectives() != problem.num_objectives)
        throw ContractViolation("hypergrid objective count does not match problem " + problem.name);

    const auto run_start = Clock::now();
    const std::size_t n = params.population_size;
    const double p_m = params.mutation_probability_for(problem.num_variables);
    Rng rng(params.seed);

    RunResult result;
    double eval_total = 0.0;
    double archive_total = 0.0;
    double engine_total = 0.0;

    auto t = Clock::now();
    std::vector<std::vector<double>> xs(n, std::vector<double>(problem.num_variables));
    for (auto& x : xs) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(problem.lower[i], problem.upper[i]);
    }
    engine_total += seconds_since(t);

    t = Clock::now();
    std::vector<Solution> parents;
    parents.reserve(n);
    for (auto& x : xs) parents.push_back(problem.evaluate(std::move(x)));
    eval_total += seconds_since(t);

    if (options.archive) result.archive.emplace(*options.archive, archive_seed(params.seed));

    t = Clock::now();
    rank_and_crowd(parents);
    engine_total += seconds_since(t);
    if (options.record_populations) result.populations.push_back(parents);

    result.trace.reserve(params.generations);
    for (std::size_t gen = 1; gen <= params.generations; ++gen) {
        GenerationTrace row;
        row.generation = gen;

        t = Clock::now();
        std::vector<std::vector<double>> child_x;
        child_x.reserve(n);
        for (std::size_t c = 0; c < n / 2; ++c) {
            const Solution& a = tournament(parents, rng);
            const Solution& b = tournament(parents, rng);
            auto [c1, c2] = sbx_crossover(a.x, b.x, params, problem.lower, problem.upper, rng);
            child_x.push_back(polynomial_mutation(std::move(c1), p_m, params.eta_m, problem.lower, problem.upper, rng));
            child_x.push_back(polynomial_mutation(std::move(c2), p_m, params.eta_m, problem.lower, problem.upper, rng));
        }
        row.engine_seconds += seconds_since(t);

        t = Clock::now();
        std::vector<Solution> merged = parents;
        merged.reserve(2 * n);
        for (auto& x : child_x) merged.push_back(problem.evaluate(std::move(x)));
        row.evaluation_seconds = seconds_since(t);

        t = Clock::now();
        const auto survivors = environmental_selection(merged, n);
        std::vector<Solution> next;
        next.reserve(n);
        for (std::size_t i : survivors) next.push_back(std::move(merged[i]));
        parents = std::move(next);
        row.engine_seconds += seconds_since(t);

        if (result.archive) {
            t = Clock::now();
            Archive& archive = *result.archive;
            const std::size_t packs_before = archive.pack_count();
            for (const Solution& s : parents) {
                if (archive.update(s) == UpdateOutcome::archive_full) {
                    if (options.full_policy == ArchiveFullPolicy::strict)
                        throw ArchiveFullError("archive full at generation " + std::to_string(gen));
                    ++row.archive_full_events;
                }
            }
            row.packed = archive.pack_count() != packs_before;
            row.archive_stats = archive.stats();
            row.archive_seconds = seconds_since(t);
            result.archive_full_events += row.archive_full_events;
        }

        eval_total += row.evaluation_seconds;
        archive_total += row.archive_seconds;
        engine_total += row.engine_seconds;
        if (options.record_populations) result.populations.push_back(parents);
        result.trace.push_back(row);
    }

    result.final_population = std::move(parents);
    result.total_seconds = seconds_since(run_start);
    result.evaluation_seconds = eval_total;
    result.archive_seconds = archive_total;
    result.engine_seconds = engine_total;
    return result;
}

}  // namespace nsgafh
