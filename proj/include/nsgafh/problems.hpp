#ifndef NSGAFH_PROBLEMS_HPP
#define NSGAFH_PROBLEMS_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "nsgafh/core.hpp"

namespace nsgafh::problems {

/// Viennet's three-objective problem on [-3,3]^2:
///   r  = x1^2 + x2^2
///   f1 = 0.5 r + sin(r)
///   f2 = (3 x1 - 2 x2 + 4)^2 / 8 + (x1 - x2 + 1)^2 / 27 + 15
///   f3 = 1 / (r + 1) - 1.1 exp(-r)
Evaluation vnt_evaluate(const std::vector<double>& x);

/// CTP1 constraint constants (a_j, b_j); constraint j holds when
/// f2 - a_j exp(-b_j f1) >= 0.
inline constexpr std::array<double, 2> kCtp1A{0.858, 0.728};
inline constexpr std::array<double, 2> kCtp1B{0.541, 0.295};

/// Two-variable CTP1 on [0,1]^2: f1 = x1, g = 1 + x2, f2 = g exp(-f1/g).
Evaluation ctp1_evaluate(const std::vector<double>& x);

ProblemSpec vnt();
ProblemSpec ctp1();

/// Same objectives and constraints as `inner`; every evaluation also blocks
/// for at least delay_ms of wall-clock time.
ProblemSpec with_delay(ProblemSpec inner, double delay_ms);

struct CatalogEntry {
    std::string name;
    ProblemSpec spec;
    /// Per-dimension grid size used when building its reference front.
    std::size_t reference_grid = 501;
};

const std::vector<CatalogEntry>& catalog();

/// Looks a problem up by name; throws std::invalid_argument if unknown.
ProblemSpec by_name(std::string_view name);

}  // namespace nsgafh::problems

#endif
