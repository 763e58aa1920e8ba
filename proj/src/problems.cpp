#include "nsgafh/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace nsgafh::problems {

namespace {

void require_in_box(const std::vector<double>& x, double lo, double hi, const char* name) {
    if (x.size() != 2) throw ContractViolation(std::string(name) + " takes exactly two variables");
    for (double v : x) {
        if (!(v >= lo && v <= hi)) throw ContractViolation(std::string(name) + ": decision variable outside box");
    }
}

}  // namespace

Evaluation vnt_evaluate(const std::vector<double>& x) {
    require_in_box(x, -3.0, 3.0, "vnt");
    const double x1 = x[0];
    const double x2 = x[1];
    const double r = x1 * x1 + x2 * x2;
    const double a = 3.0 * x1 - 2.0 * x2 + 4.0;
    const double b = x1 - x2 + 1.0;
    Evaluation e;
    e.f = {0.5 * r + std::sin(r), a * a / 8.0 + b * b / 27.0 + 15.0, 1.0 / (r + 1.0) - 1.1 * std::exp(-r)};
    return e;
}

Evaluation ctp1_evaluate(const std::vector<double>& x) {
    require_in_box(x, 0.0, 1.0, "ctp1");
    const double f1 = x[0];
    const double g = 1.0 + x[1];
    const double f2 = g * std::exp(-f1 / g);
    Evaluation e;
    e.f = {f1, f2};
    e.cv.resize(kCtp1A.size());
    for (std::size_t j = 0; j < kCtp1A.size(); ++j) {
        e.cv[j] = std::max(0.0, kCtp1A[j] * std::exp(-kCtp1B[j] * f1) - f2);
    }
    return e;
}

ProblemSpec vnt() {
    ProblemSpec p;
    p.name = "vnt";
    p.version = "vnt-1";
    p.num_variables = 2;
    p.num_objectives = 3;
    p.num_constraints = 0;
    p.lower = {-3.0, -3.0};
    p.upper = {3.0, 3.0};
    p.evaluator = vnt_evaluate;
    return p;
}

ProblemSpec ctp1() {
    ProblemSpec p;
    p.name = "ctp1";
    p.version = "ctp1-2var-1";
    p.num_variables = 2;
    p.num_objectives = 2;
    p.num_constraints = 2;
    p.lower = {0.0, 0.0};
    p.upper = {1.0, 1.0};
    p.evaluator = ctp1_evaluate;
    return p;
}

ProblemSpec with_delay(ProblemSpec inner, double delay_ms) {
    if (!(delay_ms >= 0.0)) throw ContractViolation("delay must be >= 0 ms");
    if (delay_ms == 0.0) return inner;
    const auto delay = std::chrono::duration<double, std::milli>(delay_ms);
    Evaluator wrapped = [evaluator = std::move(inner.evaluator), delay](const std::vector<double>& x) {
        const auto deadline = std::chrono::steady_clock::now() + delay;
        Evaluation e = evaluator(x);
        std::this_thread::sleep_until(deadline);
        return e;
    };
    inner.evaluator = std::move(wrapped);
    return inner;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"vnt", vnt(), 501},
        {"ctp1", ctp1(), 501},
    };
    return entries;
}

ProblemSpec by_name(std::string_view name) {
    for (const auto& e : catalog()) {
        if (e.name == name) return e.spec;
    }
    throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

}  // namespace nsgafh::problems
