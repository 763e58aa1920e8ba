#ifndef NSGAFH_NSGA2_HPP
#define NSGAFH_NSGA2_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsgafh/core.hpp"
#include "nsgafh/fh_archive.hpp"
#include "nsgafh/random.hpp"

namespace nsgafh {

/// Real-coded NSGA-II parameters. A negative mutation probability means
/// "use 1/L for the problem at hand".
struct EngineParams {
    std::size_t population_size = 60;
    std::size_t generations = 100;
    double crossover_probability = 0.8;
    double mutation_probability = -1.0;
    double eta_c = 10.0;
    double eta_m = 10.0;
    /// Chance that an individual variable is recombined once a pair crosses over.
    double sbx_variable_probability = 0.5;
    std::uint64_t seed = 1;

    void validate() const;
    double mutation_probability_for(std::size_t num_variables) const noexcept;

    friend bool operator==(const EngineParams&, const EngineParams&) = default;
};

enum class ArchiveFullPolicy {
    /// Skip the candidate, count the event, keep optimizing.
    warn_and_continue,
    /// Throw ArchiveFullError and abort the run.
    strict,
};

class ArchiveFullError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EvolveOptions {
    std::optional<HypergridConfig> archive;
    ArchiveFullPolicy full_policy = ArchiveFullPolicy::warn_and_continue;
    /// Keep a copy of every generation's parent population in the result.
    bool record_populations = false;
};

struct GenerationTrace {
    std::size_t generation = 0;
    ArchiveStats archive_stats;
    bool packed = false;
    std::size_t archive_full_events = 0;
    double evaluation_seconds = 0.0;
    double archive_seconds = 0.0;
    double engine_seconds = 0.0;
};

struct RunResult {
    std::vector<Solution> final_population;
    std::optional<Archive> archive;
    std::vector<GenerationTrace> trace;
    std::vector<std::vector<Solution>> populations;
    double total_seconds = 0.0;
    double evaluation_seconds = 0.0;
    double archive_seconds = 0.0;
    double engine_seconds = 0.0;
    std::size_t archive_full_events = 0;
};

// Operators. Exposed individually so they can be tested in isolation.

/// Fronts as lists of indices into pop; assigns rank to each member.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::vector<Solution>& pop);

/// Assigns crowding distance to pop[i] for every i in front.
void crowding_distance(std::vector<Solution>& pop, const std::vector<std::size_t>& front);

inline void crowding_distance(std::vector<Solution>& front) {
    std::vector<std::size_t> idx(front.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    crowding_distance(front, idx);
}

/// Lower rank wins, then larger crowding; a exact tie returns a.
const Solution& crowded_tournament(const Solution& a, const Solution& b) noexcept;

/// Spread factor from a uniform draw u in [0,1) for distribution index eta.
double sbx_spread_factor(double u, double eta) noexcept;

/// Perturbation in [-1,1] from a uniform draw u in [0,1) for index eta.
double polynomial_perturbation(double u, double eta) noexcept;

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(const std::vector<double>& p1,
                                                                  const std::vector<double>& p2,
                                                                  const EngineParams& params,
                                                                  const std::vector<double>& lower,
                                                                  const std::vector<double>& upper, Rng& rng);

/// p_m is taken as given (callers resolve the 1/L default).
std::vector<double> polynomial_mutation(std::vector<double> x, double p_m, double eta_m,
                                        const std::vector<double>& lower, const std::vector<double>& upper,
                                        Rng& rng);

/// Picks `count` survivors from the merged population by rank and then by
/// descending crowding (ties to the lower index). Ranks and crowding are
/// assigned to `merged` as a side effect.
std::vector<std::size_t> environmental_selection(std::vector<Solution>& merged, std::size_t count);

/// Seed for the archive's own random stream, derived from the engine seed.
std::uint64_t archive_seed(std::uint64_t engine_seed) noexcept;

/// NSGA-II with an optional fixed-hypergrid archive used purely as storage.
RunResult evolve(const ProblemSpec& problem, const EngineParams& params, const EvolveOptions& options = {});

}  // namespace nsgafh

#endif
