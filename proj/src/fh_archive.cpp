#include "nsgafh/fh_archive.hpp"

#include <algorithm>
#include <cmath>

namespace nsgafh {

void HypergridConfig::validate() const {
    if (f_ref.empty()) throw ContractViolation("hypergrid needs at least one objective");
    if (f_ref.size() != delta_f.size())
        throw ContractViolation("f_ref and delta_f must have the same length");
    for (double d : delta_f) {
        if (!(d > 0.0) || !std::isfinite(d)) throw ContractViolation("delta_f entries must be finite and > 0");
    }
    for (double r : f_ref) {
        if (!std::isfinite(r)) throw ContractViolation("f_ref entries must be finite");
    }
    if (n_cells_max < 1) throw ContractViolation("n_cells_max must be >= 1");
    if (n_sols_max < 1) throw ContractViolation("n_sols_max must be >= 1");
    if (!(eps_identical >= 0.0)) throw ContractViolation("eps_identical must be >= 0");
}

CellIndex cell_index(const std::vector<double>& f, const HypergridConfig& config) {
    if (f.size() != config.num_objectives()) throw ContractViolation("objective count does not match hypergrid");
    CellIndex idx(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (!std::isfinite(f[k])) throw ContractViolation("cell_index requires finite objectives");
        idx[k] = static_cast<std::int64_t>(std::floor((f[k] - config.f_ref[k]) / config.delta_f[k]));
    }
    return idx;
}

std::string_view to_string(UpdateOutcome outcome) noexcept {
    switch (outcome) {
        case UpdateOutcome::rejected_infeasible: return "rejected_infeasible";
        case UpdateOutcome::rejected_dominated: return "rejected_dominated";
        case UpdateOutcome::rejected_identical: return "rejected_identical";
        case UpdateOutcome::inserted: return "inserted";
        case UpdateOutcome::inserted_with_eviction: return "inserted_with_eviction";
        case UpdateOutcome::inserted_after_pack: return "inserted_after_pack";
        case UpdateOutcome::archive_full: return "archive_full";
    }
    return "unknown";
}

Archive::Archive(HypergridConfig config, std::uint64_t seed) : config_(std::move(config)), rng_(seed) {
    config_.validate();
}

std::vector<Cell>::iterator Archive::find_cell(const CellIndex& idx) {
    return std::find_if(cells_.begin(), cells_.end(), [&](const Cell& c) { return c.index == idx; });
}

UpdateOutcome Archive::update(const Solution& candidate) {
    if (!candidate.feasible()) return UpdateOutcome::rejected_infeasible;
    const CellIndex target = cell_index(candidate.f, config_);

    // Screening: nothing changes unless the candidate survives every comparison.
    for (const Cell& cell : cells_) {
        for (const Solution& stored : cell.slots) {
            if (dominates(stored, candidate)) return UpdateOutcome::rejected_dominated;
            if (identical(stored, candidate, config_.eps_identical)) return UpdateOutcome::rejected_identical;
        }
    }

    // archive_full must leave the pre-call state intact, so decide it before
    // removing anything. Removing dominated solutions only ever vacates cells.
    auto existing = find_cell(target);
    const bool need_new_cell = existing == cells_.end();
    if (need_new_cell && cells_.size() >= config_.n_cells_max) {
        const bool has_vacant = std::any_of(cells_.begin(), cells_.end(), [&](const Cell& c) {
            if (!c.occupied()) return true;
            return std::all_of(c.slots.begin(), c.slots.end(),
                               [&](const Solution& s) { return dominates(candidate, s); });
        });
        if (!has_vacant) return UpdateOutcome::archive_full;
    }

    for (Cell& cell : cells_) {
        std::erase_if(cell.slots, [&](const Solution& s) { return dominates(candidate, s); });
    }

    if (!need_new_cell) {
        Cell& cell = *existing;
        if (cell.slots.size() >= config_.n_sols_max) {
            const auto victim = static_cast<std::ptrdiff_t>(rng_.index(cell.slots.size()));
            cell.slots.erase(cell.slots.begin() + victim);
            cell.slots.push_back(candidate);
            return UpdateOutcome::inserted_with_eviction;
        }
        cell.slots.push_back(candidate);
        return UpdateOutcome::inserted;
    }

    UpdateOutcome outcome = UpdateOutcome::inserted;
    if (cells_.size() >= config_.n_cells_max) {
        pack();
        outcome = UpdateOutcome::inserted_after_pack;
    }
    cells_.push_back(Cell{target, {candidate}});
    return outcome;
}

std::size_t Archive::pack() {
    const std::size_t before = cells_.size();
    std::erase_if(cells_, [](const Cell& c) { return !c.occupied(); });
    const std::size_t removed = before - cells_.size();
    if (removed > 0) ++pack_count_;
    return removed;
}

ArchiveStats Archive::stats() const noexcept {
    ArchiveStats s;
    s.total = cells_.size();
    s.filled = static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](const Cell& c) { return c.occupied(); }));
    s.empty = s.total - s.filled;
    return s;
}

std::size_t Archive::size() const noexcept {
    std::size_t n = 0;
    for (const Cell& c : cells_) n += c.slots.size();
    return n;
}

std::vector<Solution> Archive::extract_solutions() const {
    std::vector<Solution> out;
    out.reserve(size());
    for (const Cell& c : cells_) out.insert(out.end(), c.slots.begin(), c.slots.end());
    return out;
}

}  // namespace nsgafh
