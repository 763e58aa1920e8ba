#include <chrono>
#include <cmath>

#include "doctest.h"
#include "nsgafh/problems.hpp"

using namespace nsgafh;
using doctest::Approx;

// Reference values from an independent 40-digit evaluation of the same
// formulas.
TEST_CASE("vnt_evaluate: cross-checked values") {
    auto e = problems::vnt_evaluate({0.0, 0.0});
    REQUIRE(e.f.size() == 3);
    CHECK(e.cv.empty());
    CHECK(e.f[0] == Approx(0.0).epsilon(1e-12));
    CHECK(e.f[1] == Approx(17.037037037037037037).epsilon(1e-12));
    CHECK(e.f[2] == Approx(-0.1).epsilon(1e-12));

    e = problems::vnt_evaluate({1.5, -0.7});
    CHECK(e.f[0] == Approx(1.7608847788984524382).epsilon(1e-12));
    CHECK(e.f[1] == Approx(27.630509259259259029).epsilon(1e-12));
    CHECK(e.f[2] == Approx(0.19635229756189968862).epsilon(1e-12));

    e = problems::vnt_evaluate({-2.25, 1.0});
    CHECK(e.f[0] == Approx(2.8123516386882385115).epsilon(1e-12));
    CHECK(e.f[1] == Approx(18.0078125).epsilon(1e-12));
    CHECK(e.f[2] == Approx(0.13903149096232081593).epsilon(1e-12));
}

TEST_CASE("vnt_evaluate: determinism, radial symmetry and box") {
    for (double a = -3.0; a <= 3.0; a += 0.37) {
        for (double b = -3.0; b <= 3.0; b += 0.41) {
            const auto p = problems::vnt_evaluate({a, b});
            const auto q = problems::vnt_evaluate({-a, -b});
            CHECK(p.f == problems::vnt_evaluate({a, b}).f);
            CHECK(p.f[0] == q.f[0]);
            CHECK(p.f[2] == q.f[2]);
        }
    }
    CHECK_THROWS_AS(problems::vnt_evaluate({3.1, 0.0}), ContractViolation);
    CHECK_THROWS_AS(problems::vnt_evaluate({0.0}), ContractViolation);
}

TEST_CASE("ctp1_evaluate: cross-checked values") {
    auto e = problems::ctp1_evaluate({0.0, 0.0});
    CHECK(e.f == std::vector<double>{0.0, 1.0});
    CHECK(e.cv == std::vector<double>{0.0, 0.0});

    e = problems::ctp1_evaluate({1.0, 0.0});
    CHECK(e.f[1] == Approx(0.3678794411714423216).epsilon(1e-12));
    CHECK(e.cv[0] == Approx(0.13161881128059202527).epsilon(1e-12));
    CHECK(e.cv[1] == Approx(0.1741395545037396904).epsilon(1e-12));

    e = problems::ctp1_evaluate({0.5, 0.1});
    CHECK(e.f[1] == Approx(0.69821006083431004087).epsilon(1e-12));
    CHECK(e.cv == std::vector<double>{0.0, 0.0});

    e = problems::ctp1_evaluate({0.25, 0.75});
    CHECK(e.f[1] == Approx(1.5170363245628178481).epsilon(1e-12));

    CHECK_THROWS_AS(problems::ctp1_evaluate({-0.1, 0.0}), ContractViolation);
}

TEST_CASE("ctp1: g = 1 slice and monotonicity in x2") {
    for (double x1 = 0.0; x1 <= 1.0; x1 += 0.05) {
        CHECK(problems::ctp1_evaluate({x1, 0.0}).f[1] == Approx(std::exp(-x1)).epsilon(1e-15));
        auto prev = problems::ctp1_evaluate({x1, 0.0});
        for (double x2 = 0.05; x2 <= 1.0; x2 += 0.05) {
            const auto cur = problems::ctp1_evaluate({x1, x2});
            CHECK(cur.f[1] > prev.f[1]);
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(cur.cv[j] <= prev.cv[j]);
                CHECK(cur.cv[j] >= 0.0);
                const bool holds = cur.f[1] - problems::kCtp1A[j] * std::exp(-problems::kCtp1B[j] * cur.f[0]) >= 0.0;
                CHECK(holds == (cur.cv[j] == 0.0));
            }
            prev = cur;
        }
    }
}

TEST_CASE("with_delay") {
    const ProblemSpec inner = problems::vnt();
    const ProblemSpec same = problems::with_delay(inner, 0.0);
    CHECK(same.evaluate({0.3, -1.2}).f == inner.evaluate({0.3, -1.2}).f);

    const ProblemSpec slow = problems::with_delay(problems::ctp1(), 10.0);
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> x{i / 100.0, 0.5};
        const Solution s = slow.evaluate(x);
        CHECK(s.f == problems::ctp1().evaluate(x).f);
        CHECK(s.cv == problems::ctp1().evaluate(x).cv);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(elapsed >= 1.0);

    CHECK_THROWS_AS(problems::with_delay(inner, -1.0), ContractViolation);
}

TEST_CASE("catalog lookup") {
    CHECK(problems::by_name("vnt").num_objectives == 3);
    CHECK(problems::by_name("ctp1").num_constraints == 2);
    CHECK_THROWS_AS(problems::by_name("zdt1"), std::invalid_argument);
    for (const auto& e : problems::catalog()) CHECK_NOTHROW(e.spec.validate());
}
