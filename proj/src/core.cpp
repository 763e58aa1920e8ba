#include "nsgafh/core.hpp"

#include <cmath>
#include <numeric>

namespace nsgafh {

bool Solution::feasible() const noexcept {
    for (double v : cv) {
        if (v != 0.0) return false;
    }
    return true;
}

double Solution::total_violation() const noexcept {
    return std::accumulate(cv.begin(), cv.end(), 0.0);
}

void ProblemSpec::validate() const {
    if (num_variables < 1) throw ContractViolation("problem needs at least one variable");
    if (num_objectives < 2) throw ContractViolation("problem needs at least two objectives");
    if (lower.size() != num_variables || upper.size() != num_variables)
        throw ContractViolation("bounds length does not match number of variables");
    for (std::size_t i = 0; i < num_variables; ++i) {
        if (!(lower[i] < upper[i])) throw ContractViolation("lower bound must be below upper bound");
    }
    if (!evaluator) throw ContractViolation("problem has no evaluator");
}

bool ProblemSpec::in_bounds(const std::vector<double>& x) const noexcept {
    if (x.size() != num_variables) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
}

Solution ProblemSpec::evaluate(std::vector<double> x) const {
    Evaluation e = evaluator(x);
    if (e.f.size() != num_objectives) throw ContractViolation(name + ": evaluator returned wrong objective count");
    if (e.cv.size() != num_constraints) throw ContractViolation(name + ": evaluator returned wrong constraint count");
    for (double v : e.f) {
        if (std::isnan(v)) throw ContractViolation(name + ": evaluator returned NaN objective");
    }
    for (double v : e.cv) {
        if (!(v >= 0.0)) throw ContractViolation(name + ": constraint violation must be >= 0");
    }
    Solution s;
    s.x = std::move(x);
    s.f = std::move(e.f);
    s.cv = std::move(e.cv);
    return s;
}

bool dominates(const std::vector<double>& fa, const std::vector<double>& fb) {
    if (fa.size() != fb.size()) throw ContractViolation("objective dimension mismatch");
    bool strictly_better = false;
    for (std::size_t k = 0; k < fa.size(); ++k) {
        if (fa[k] > fb[k]) return false;
        if (fa[k] < fb[k]) strictly_better = true;
    }
    return strictly_better;
}

bool dominates(const Solution& a, const Solution& b) {
    if (a.cv.size() != b.cv.size()) throw ContractViolation("constraint dimension mismatch");
    const bool fa = a.feasible();
    const bool fb = b.feasible();
    if (fa && !fb) {
        if (a.f.size() != b.f.size()) throw ContractViolation("objective dimension mismatch");
        return true;
    }
    if (!fa && fb) {
        if (a.f.size() != b.f.size()) throw ContractViolation("objective dimension mismatch");
        return false;
    }
    if (!fa && !fb) {
        if (a.f.size() != b.f.size()) throw ContractViolation("objective dimension mismatch");
        return a.total_violation() < b.total_violation();
    }
    return dominates(a.f, b.f);
}

bool identical(const Solution& a, const Solution& b, double eps) {
    if (a.x.size() != b.x.size() || a.f.size() != b.f.size())
        throw ContractViolation("dimension mismatch in identity check");
    for (std::size_t i = 0; i < a.f.size(); ++i) {
        if (!(std::abs(a.f[i] - b.f[i]) <= eps)) return false;
    }
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        if (!(std::abs(a.x[i] - b.x[i]) <= eps)) return false;
    }
    return true;
}

}  // namespace nsgafh
