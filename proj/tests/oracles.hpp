// Test-only reference implementations. These deliberately avoid the
// library's own algorithms so they can serve as independent checks.
#ifndef NSGAFH_TESTS_ORACLES_HPP
#define NSGAFH_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "nsgafh/core.hpp"

namespace oracle {

using nsgafh::Solution;

inline bool pareto_dominates(const std::vector<double>& a, const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strict = true;
    }
    return strict;
}

/// O(n^2) non-dominated filter on objective vectors, duplicates collapsed.
inline std::vector<std::vector<double>> brute_force_front(const std::vector<std::vector<double>>& pts) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) dominated = pareto_dominates(pts[j], pts[i]);
        if (dominated) continue;
        if (std::find(out.begin(), out.end(), pts[i]) == out.end()) out.push_back(pts[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Front peeling: repeatedly strip the non-dominated subset.
inline std::vector<std::vector<std::size_t>> peel_fronts(const std::vector<Solution>& pop) {
    std::vector<std::size_t> remaining(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) remaining[i] = i;
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        std::vector<std::size_t> rest;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining) {
                if (j != i && nsgafh::dominates(pop[j], pop[i])) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(front);
        remaining = rest;
    }
    return fronts;
}

/// Composite Simpson rule.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 400) {
    if (b <= a) return 0.0;
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// SBX spread-factor density: 0.5(eta+1) b^eta on [0,1], 0.5(eta+1) / b^(eta+2) above.
inline double sbx_density(double beta, double eta) {
    if (beta < 0.0) return 0.0;
    if (beta <= 1.0) return 0.5 * (eta + 1.0) * std::pow(beta, eta);
    return 0.5 * (eta + 1.0) / std::pow(beta, eta + 2.0);
}

inline double sbx_cdf_by_quadrature(double beta, double eta) {
    const auto dens = [eta](double b) { return sbx_density(b, eta); };
    if (beta <= 1.0) return simpson(dens, 0.0, beta);
    return simpson(dens, 0.0, 1.0) + simpson(dens, 1.0, beta);
}

/// Polynomial-mutation perturbation density on [-1,1]: 0.5(eta+1)(1-|d|)^eta.
inline double pm_density(double delta, double eta) {
    if (delta < -1.0 || delta > 1.0) return 0.0;
    return 0.5 * (eta + 1.0) * std::pow(1.0 - std::abs(delta), eta);
}

inline double pm_cdf_by_quadrature(double delta, double eta) {
    const auto dens = [eta](double d) { return pm_density(d, eta); };
    delta = std::clamp(delta, -1.0, 1.0);
    if (delta <= 0.0) return simpson(dens, -1.0, delta);
    return simpson(dens, -1.0, 0.0) + simpson(dens, 0.0, delta);
}

/// Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

}  // namespace oracle

#endif
