#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nsgafh/nsga2.hpp"

namespace nsgafh {

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::vector<Solution>& pop) {
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    if (n == 0) return fronts;

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(pop[p], pop[q])) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(pop[q], pop[p])) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) current.push_back(p);
    }

    std::size_t rank = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            pop[p].rank = rank;
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
        ++rank;
    }
    return fronts;
}

void crowding_distance(std::vector<Solution>& pop, const std::vector<std::size_t>& front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (front.empty()) return;
    for (std::size_t i : front) pop[i].crowding = 0.0;
    if (front.size() <= 2) {
        for (std::size_t i : front) pop[i].crowding = inf;
        return;
    }

    const std::size_t m = pop[front.front()].f.size();
    std::vector<std::size_t> order(front);
    for (std::size_t k = 0; k < m; ++k) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pop[a].f[k] < pop[b].f[k]; });
        const double fmin = pop[order.front()].f[k];
        const double fmax = pop[order.back()].f[k];
        pop[order.front()].crowding = inf;
        pop[order.back()].crowding = inf;
        const double range = fmax - fmin;
        if (!(range > 0.0)) continue;
        for (std::size_t j = 1; j + 1 < order.size(); ++j) {
            Solution& s = pop[order[j]];
            if (std::isinf(s.crowding)) continue;
            s.crowding += (pop[order[j + 1]].f[k] - pop[order[j - 1]].f[k]) / range;
        }
    }
}

const Solution& crowded_tournament(const Solution& a, const Solution& b) noexcept {
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    if (b.crowding > a.crowding) return b;
    return a;
}

double sbx_spread_factor(double u, double eta) noexcept {
    const double e = 1.0 / (eta + 1.0);
    if (u <= 0.5) return std::pow(2.0 * u, e);
    return std::pow(1.0 / (2.0 * (1.0 - u)), e);
}

double polynomial_perturbation(double u, double eta) noexcept {
    const double e = 1.0 / (eta + 1.0);
    if (u < 0.5) return std::pow(2.0 * u, e) - 1.0;
    return 1.0 - std::pow(2.0 * (1.0 - u), e);
}

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(const std::vector<double>& p1,
                                                                  const std::vector<double>& p2,
                                                                  const EngineParams& params,
                                                                  const std::vector<double>& lower,
                                                                  const std::vector<double>& upper, Rng& rng) {
    if (p1.size() != p2.size() || p1.size() != lower.size() || p1.size() != upper.size())
        throw ContractViolation("sbx_crossover: dimension mismatch");
    std::vector<double> c1 = p1;
    std::vector<double> c2 = p2;
    if (!(rng.uniform() < params.crossover_probability)) return {std::move(c1), std::move(c2)};

    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (!(rng.uniform() < params.sbx_variable_probability)) continue;
        if (std::abs(p1[i] - p2[i]) <= 1e-14) continue;
        const double beta = sbx_spread_factor(rng.uniform(), params.eta_c);
        const double a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
        const double b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
        c1[i] = std::clamp(a, lower[i], upper[i]);
        c2[i] = std::clamp(b, lower[i], upper[i]);
    }
    return {std::move(c1), std::move(c2)};
}

std::vector<double> polynomial_mutation(std::vector<double> x, double p_m, double eta_m,
                                        const std::vector<double>& lower, const std::vector<double>& upper,
                                        Rng& rng) {
    if (x.size() != lower.size() || x.size() != upper.size())
        throw ContractViolation("polynomial_mutation: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(rng.uniform() < p_m)) continue;
        const double delta = polynomial_perturbation(rng.uniform(), eta_m);
        x[i] = std::clamp(x[i] + delta * (upper[i] - lower[i]), lower[i], upper[i]);
    }
    return x;
}

std::vector<std::size_t> environmental_selection(std::vector<Solution>& merged, std::size_t count) {
    if (count > merged.size()) throw ContractViolation("environmental_selection: not enough solutions");
    const auto fronts = fast_nondominated_sort(merged);
    std::vector<std::size_t> chosen;
    chosen.reserve(count);
    for (const auto& front : fronts) {
        crowding_distance(merged, front);
        if (chosen.size() + front.size() <= count) {
            chosen.insert(chosen.end(), front.begin(), front.end());
            if (chosen.size() == count) break;
            continue;
        }
        std::vector<std::size_t> last(front);
        std::sort(last.begin(), last.end(), [&](std::size_t a, std::size_t b) {
            if (merged[a].crowding != merged[b].crowding) return merged[a].crowding > merged[b].crowding;
            return a < b;
        });
        last.resize(count - chosen.size());
        chosen.insert(chosen.end(), last.begin(), last.end());
        break;
    }
    return chosen;
}

}  // namespace nsgafh
