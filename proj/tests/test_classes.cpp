#include <cmath>
#include <map>
#include <random>
#include <vector>

#include <doctest.h>

#include "mixaudit/classes.hpp"
#include "mixaudit/coefficients.hpp"

using namespace mixaudit;

TEST_CASE("canonical drops trailing zeros only") {
    CHECK(canonical({2, 1, 0, 0}) == Pattern{2, 1});
    CHECK(canonical({2, 0, 1}) == Pattern{2, 0, 1});
    CHECK(canonical({0, 0}) == Pattern{});
}

TEST_CASE("class structure validation and capacities") {
    CHECK_THROWS_AS(ClassStructure({2, 1}), std::invalid_argument);   // ids not in first-appearance order
    CHECK_THROWS_AS(ClassStructure({1, 3}), std::invalid_argument);   // gap in ids
    CHECK_THROWS_AS(ClassStructure(std::vector<int>{}), std::invalid_argument);

    // components 1,2,3,6 alike; 4 and 5 each their own class
    ClassStructure cs({1, 1, 1, 2, 3, 1});
    CHECK(cs.components() == 6);
    CHECK(cs.num_classes(3) == 1);
    CHECK(cs.num_classes(6) == 3);
    CHECK(cs.capacity(1, 3) == 3);
    CHECK(cs.capacity(1, 6) == 4);
    CHECK(cs.capacity(2, 3) == 0);
    CHECK(cs.capacity(2, 4) == 1);
    CHECK(cs.total_capacity(3) == 1);
    CHECK(cs.class_index(5) == 3);

    CHECK(ClassStructure::all_alike(4).num_classes(4) == 1);
    CHECK(ClassStructure::all_distinct(4).num_classes(4) == 4);
}

TEST_CASE("minimal accommodating size") {
    // worked example: h = (2,1,0) needs components 1..4
    ClassStructure cs({1, 1, 1, 2, 3, 1});
    CHECK(s_of_h({2, 1, 0}, cs) == 4);
    CHECK(s_of_h({2, 1}, cs) == 4);
    CHECK(s_of_h({1}, cs) == 1);
    CHECK(s_of_h({0, 0, 1}, cs) == 5);
    CHECK(s_of_h({4}, cs) == 6);
    CHECK_THROWS_AS(s_of_h({5}, cs), std::invalid_argument);      // exceeds class capacity
    CHECK_THROWS_AS(s_of_h({1, 1, 1, 1}, cs), std::invalid_argument);  // more classes than exist

    ClassStructure alike = ClassStructure::all_alike(5);
    for (int m = 1; m <= 5; ++m) CHECK(s_of_h({m}, alike) == m);
}

TEST_CASE("subset-counting weights for the extreme structures") {
    const int n = 10;
    // all alike: gamma_h^t = C(t-1, h-1)
    ClassStructure alike = ClassStructure::all_alike(6);
    for (int t = 1; t <= 6; ++t)
        for (int h = 1; h <= t; ++h) {
            const double want = std::round(std::exp(log_binomial(t - 1, h - 1)));
            CHECK(gamma_h_t({h}, t, alike) == doctest::Approx(want));
        }
    CHECK(gamma_h_t({3}, 2, alike) == 0.0);  // not reachable at t = 2

    // all distinct: every subset is alone in its class, gamma = 1
    ClassStructure distinct = ClassStructure::all_distinct(5);
    for (int t = 1; t <= 5; ++t)
        for (const Pattern& h : enumerate_H(t, distinct, n)) CHECK(gamma_h_t(h, t, distinct) == 1.0);
}

TEST_CASE("weights add up to the number of admissible subsets") {
    // sum over H_t of gamma_h^t = number of subsets of {1..t} containing t
    // with at most n elements
    std::vector<ClassStructure> structures{
        ClassStructure::all_alike(6), ClassStructure::all_distinct(6),
        ClassStructure({1, 1, 1, 2, 3, 1}), ClassStructure({1, 2, 2, 1, 3, 3})};
    for (int n : {3, 6, 12}) {
        for (const ClassStructure& cs : structures) {
            for (int t = 1; t <= 6; ++t) {
                double total = 0.0;
                for (const Pattern& h : enumerate_H(t, cs, n)) total += gamma_h_t(h, t, cs);
                double want = 0.0;  // choose the other members from {1..t-1}
                for (int j = 0; j <= std::min(t - 1, n - 1); ++j)
                    want += std::round(std::exp(log_binomial(t - 1, j)));
                CHECK(total == doctest::Approx(want));
            }
        }
    }
}

TEST_CASE("pattern enumeration respects the occupancy cap and the s(h) filter") {
    ClassStructure cs({1, 2, 2, 1, 3, 3});
    for (int t = 1; t <= 6; ++t) {
        const auto all = enumerate_H(t, cs, 4);
        for (const Pattern& h : all) {
            int total = 0;
            for (int v : h) total += v;
            CHECK(total <= 4);
            CHECK(s_of_h(h, cs) <= t);
            CHECK(gamma_h_t(h, t, cs) > 0.0);
        }
        // the s(h) = r slices partition H_t
        std::size_t count = 0;
        for (int r = 1; r <= t; ++r) count += enumerate_H(t, cs, 4, r).size();
        CHECK(count == all.size());
    }
}

TEST_CASE("accumulated weights over a range of component counts") {
    // all alike: gamma_h^{h,k} = C(k, h)
    ClassStructure alike = ClassStructure::all_alike(7);
    for (int h = 1; h <= 7; ++h)
        for (int k = h; k <= 7; ++k) {
            const double want = std::round(std::exp(log_binomial(k, h)));
            CHECK(gamma_h_rk({h}, h, k, alike) == doctest::Approx(want));
        }
    CHECK_THROWS_AS(gamma_h_rk({2}, 3, 5, alike), std::invalid_argument);  // r != s(h)
    CHECK_THROWS_AS(gamma_h_rk({3}, 3, 2, alike), std::invalid_argument);  // k < r
}

TEST_CASE("representation reduces to the triangular expansion when all components are alike") {
    ModelConfig cfg(9, 1.3);
    ClassStructure alike = ClassStructure::all_alike(7);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    std::map<Pattern, double> fdag;
    for (int h = 1; h <= 7; ++h) fdag[{h}] = unif(rng);

    CoeffTables tab = build_tables(7, cfg);
    for (int k = 1; k <= 7; ++k) {
        double want = 0.0;
        for (int h = 1; h <= k; ++h) want += tab.b(k, h) * fdag[{h}];
        CHECK(represent_fk(fdag, k, alike, cfg) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("direct and recursive representations agree for mixed structures") {
    ModelConfig cfg(8, 0.7);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    for (const ClassStructure& cs :
         {ClassStructure({1, 2, 2, 1, 3, 3}), ClassStructure::all_distinct(5),
          ClassStructure({1, 1, 2, 1, 2})}) {
        std::map<Pattern, double> fdag;
        for (int r = 1; r <= cs.components(); ++r)
            for (const Pattern& h : enumerate_H(r, cs, cfg.n, r))
                if (!fdag.count(h)) fdag[h] = unif(rng);
        for (int k = 1; k <= cs.components(); ++k) {
            const double direct = represent_fk(fdag, k, cs, cfg);
            const double recur = represent_fk_recursive(fdag, k, cs, cfg);
            CHECK(direct == doctest::Approx(recur).epsilon(1e-11));
            CHECK(direct > 0.0);
        }
    }
}
