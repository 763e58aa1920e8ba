#ifndef NSGAFH_CORE_HPP
#define NSGAFH_CORE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsgafh {

/// Raised when a caller breaks an operation's precondition (dimension
/// mismatch, non-finite input, out-of-box decision vector, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A candidate solution. Objectives are always minimized; cv holds
/// nonnegative constraint violations, 0 meaning satisfied.
struct Solution {
    std::vector<double> x;
    std::vector<double> f;
    std::vector<double> cv;
    std::size_t rank = 0;
    double crowding = 0.0;

    bool feasible() const noexcept;
    double total_violation() const noexcept;

    friend bool operator==(const Solution&, const Solution&) = default;
};

struct Evaluation {
    std::vector<double> f;
    std::vector<double> cv;
};

using Evaluator = std::function<Evaluation(const std::vector<double>&)>;

/// Box-bounded problem definition. The evaluator must be deterministic.
struct ProblemSpec {
    std::string name;
    std::string version;
    std::size_t num_variables = 0;    // L
    std::size_t num_objectives = 0;   // M
    std::size_t num_constraints = 0;  // J
    std::vector<double> lower;
    std::vector<double> upper;
    Evaluator evaluator;

    /// Throws ContractViolation if the dimensions or bounds are inconsistent.
    void validate() const;

    /// Runs the evaluator and checks the result shape, finiteness and cv >= 0.
    Solution evaluate(std::vector<double> x) const;

    bool in_bounds(const std::vector<double>& x) const noexcept;
};

inline constexpr double kDefaultIdenticalEps = 1e-12;

/// Constrained domination: feasibility first, then smaller total violation,
/// then Pareto dominance on the objectives.
bool dominates(const Solution& a, const Solution& b);

/// Pareto dominance on raw objective vectors (minimization).
bool dominates(const std::vector<double>& fa, const std::vector<double>& fb);

/// True iff x and f agree componentwise within eps.
bool identical(const Solution& a, const Solution& b, double eps = kDefaultIdenticalEps);

}  // namespace nsgafh

#endif
