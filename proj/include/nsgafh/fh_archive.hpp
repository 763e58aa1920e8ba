#ifndef NSGAFH_FH_ARCHIVE_HPP
#define NSGAFH_FH_ARCHIVE_HPP

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nsgafh/core.hpp"
#include "nsgafh/random.hpp"

namespace nsgafh {

/// Fixed hypergrid parameters: a reference value and a spacing per
/// objective, plus the two capacity bounds. The grid itself has no edges.
struct HypergridConfig {
    std::vector<double> f_ref;
    std::vector<double> delta_f;
    std::size_t n_cells_max = 1000;
    std::size_t n_sols_max = 10;
    double eps_identical = kDefaultIdenticalEps;

    void validate() const;
    std::size_t num_objectives() const noexcept { return f_ref.size(); }

    friend bool operator==(const HypergridConfig&, const HypergridConfig&) = default;
};

using CellIndex = std::vector<std::int64_t>;

/// idx_k = floor((f_k - f_ref_k) / delta_f_k), unbounded in both directions.
CellIndex cell_index(const std::vector<double>& f, const HypergridConfig& config);

struct Cell {
    CellIndex index;
    std::vector<Solution> slots;

    /// A vacant cell once held a solution; it stays in the list until packed.
    bool occupied() const noexcept { return !slots.empty(); }

    friend bool operator==(const Cell&, const Cell&) = default;
};

enum class UpdateOutcome {
    rejected_infeasible,
    rejected_dominated,
    rejected_identical,
    inserted,
    inserted_with_eviction,
    inserted_after_pack,
    archive_full,
};

std::string_view to_string(UpdateOutcome outcome) noexcept;

constexpr bool was_inserted(UpdateOutcome o) noexcept {
    return o == UpdateOutcome::inserted || o == UpdateOutcome::inserted_with_eviction ||
           o == UpdateOutcome::inserted_after_pack;
}

struct ArchiveStats {
    std::size_t filled = 0;
    std::size_t empty = 0;
    std::size_t total = 0;

    friend bool operator==(const ArchiveStats&, const ArchiveStats&) = default;
};

/// Bounded external archive of non-dominated solutions stored in fixed
/// hypergrid cells. Single writer: update() and pack() must be serialized.
class Archive {
public:
    explicit Archive(HypergridConfig config, std::uint64_t seed = 0);

    /// Screens the candidate against every stored solution, then inserts it
    /// once. archive_full leaves the archive exactly as it was.
    UpdateOutcome update(const Solution& candidate);

    /// Removes vacant cells, keeping the occupied ones in order.
    /// Returns the number of cells removed.
    std::size_t pack();

    ArchiveStats stats() const noexcept;
    std::vector<Solution> extract_solutions() const;

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const HypergridConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept;
    std::size_t pack_count() const noexcept { return pack_count_; }

    friend bool operator==(const Archive&, const Archive&) = default;

private:
    std::vector<Cell>::iterator find_cell(const CellIndex& idx);

    HypergridConfig config_;
    std::vector<Cell> cells_;
    Rng rng_;
    std::size_t pack_count_ = 0;
};

}  // namespace nsgafh

#endif
