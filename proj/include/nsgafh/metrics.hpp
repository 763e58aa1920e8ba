#ifndef NSGAFH_METRICS_HPP
#define NSGAFH_METRICS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsgafh/core.hpp"

namespace nsgafh::metrics {

using Point = std::vector<double>;

/// Grid-approximate Pareto front of a problem, sorted lexicographically.
struct ReferenceFront {
    std::vector<Point> points;
    std::size_t grid_per_dim = 0;
    std::string problem;
    std::string version;
};

/// Indices of the non-dominated points (exact duplicates collapse to the
/// first occurrence), in lexicographic order of the points.
/// O(n log n) for two or three objectives.
std::vector<std::size_t> nondominated_indices(const std::vector<Point>& points);

inline constexpr std::uint64_t kDefaultMaxGridEvaluations = 50'000'000;

/// Evaluates a full tensor grid over the decision box, drops infeasible
/// points and keeps the non-dominated ones.
ReferenceFront build_reference_front(const ProblemSpec& problem, std::size_t grid_per_dim,
                                     std::uint64_t max_evaluations = kDefaultMaxGridEvaluations);

/// Mean Euclidean distance from each front point to its nearest reference point.
double generational_distance(const std::vector<Point>& front, const ReferenceFront& reference);
double generational_distance(const std::vector<Solution>& front, const ReferenceFront& reference);

bool is_mutually_nondominating(const std::vector<Solution>& set);

/// Members of pop not dominated by any other member.
std::vector<Solution> nondominated_subset(const std::vector<Solution>& pop);

/// On-disk store of reference fronts keyed by problem name, grid and
/// problem version.
class ReferenceFrontCache {
public:
    explicit ReferenceFrontCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path path_for(const ProblemSpec& problem, std::size_t grid_per_dim) const;
    std::optional<ReferenceFront> load(const ProblemSpec& problem, std::size_t grid_per_dim) const;
    void store(const ReferenceFront& front, const ProblemSpec& problem) const;

    /// load(), or build and store.
    ReferenceFront get(const ProblemSpec& problem, std::size_t grid_per_dim) const;

private:
    std::filesystem::path dir_;
};

void write_front_csv(const ReferenceFront& front, std::ostream& out);
void write_front_csv(const ReferenceFront& front, const std::filesystem::path& path);
ReferenceFront read_front_csv(const std::filesystem::path& path);

}  // namespace nsgafh::metrics

#endif
