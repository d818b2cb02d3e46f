#include <doctest.h>

#include <cmath>
#include <random>

#include "wiener/dyadic.hpp"

using namespace wiener;

namespace {

GridPath random_path(double a, int n, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> levels(std::size_t{1} << n);
    for (auto& v : levels) v = dist(gen);
    return GridPath(DyadicGrid(a, n), std::move(levels));
}

} // namespace

TEST_CASE("grid invariants") {
    DyadicGrid g(1.0, 3);
    CHECK(g.count() == 8);
    CHECK(g.spacing() == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g.time(8) == 1.0);
    CHECK(g.time(0) == 0.0);

    CHECK_THROWS_AS(DyadicGrid(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(DyadicGrid(-1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(DyadicGrid(1.0, 0), std::invalid_argument);

    // dyadic nesting: every level-n point is a level-(n+1) point
    DyadicGrid fine(1.0, 4);
    for (std::size_t k = 0; k <= g.count(); ++k)
        CHECK(g.time(k) == fine.time(2 * k));
}

TEST_CASE("project on known paths") {
    GridPath zero(DyadicGrid(2.0, 2), {0, 0, 0, 0});
    for (double inc : project(zero).increments) CHECK(inc == 0.0);

    // x(t) = t at a=1, n=1: equal increments forced
    GridPath lin(DyadicGrid(1.0, 1), {0.5, 1.0});
    auto inc = project(lin).increments;
    CHECK(inc[0] == 0.5);
    CHECK(inc[1] == 0.5);

    // hand subtraction oracle
    GridPath saw(DyadicGrid(1.0, 2), {1, 0, 1, 0});
    CHECK(project(saw).increments == std::vector<double>{1, -1, 1, -1});
}

TEST_CASE("cumulate on known increments") {
    IncrementVector zero(DyadicGrid(1.0, 2), {0, 0, 0, 0});
    for (double v : cumulate(zero).levels) CHECK(v == 0.0);

    IncrementVector half(DyadicGrid(1.0, 1), {0.5, 0.5});
    CHECK(cumulate(half).levels == std::vector<double>{0.5, 1.0});

    IncrementVector saw(DyadicGrid(1.0, 2), {1, -1, 1, -1});
    CHECK(cumulate(saw).levels == std::vector<double>{1, 0, 1, 0});
}

TEST_CASE("round trip within machine epsilon") {
    std::mt19937 gen(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 8;
        const auto p = random_path(0.5 + trial * 0.1, n, gen);
        const double tol = std::ldexp(1.0, n) * 1e-15;

        const auto back = cumulate(project(p));
        for (std::size_t i = 0; i < p.levels.size(); ++i)
            CHECK(std::fabs(back.levels[i] - p.levels[i]) <=
                  tol * (1.0 + std::fabs(p.levels[i])));

        const auto inc = project(p);
        const auto inc_back = project(cumulate(inc));
        for (std::size_t i = 0; i < inc.increments.size(); ++i)
            CHECK(std::fabs(inc_back.increments[i] - inc.increments[i]) <=
                  tol * (1.0 + std::fabs(inc.increments[i])));
    }
}

TEST_CASE("refine") {
    GridPath p(DyadicGrid(1.0, 1), {1.0, 0.0});

    CHECK(refine(p, 1).levels == p.levels); // identity at same level

    // linear interpolation by hand
    CHECK(refine(p, 2).levels == std::vector<double>{0.5, 1.0, 0.5, 0.0});

    GridPath zero(DyadicGrid(1.0, 1), {0.0, 0.0});
    for (double v : refine(zero, 5).levels) CHECK(v == 0.0);

    CHECK_THROWS_WITH_AS(refine(refine(p, 3), 2), "cannot coarsen with refine",
                         std::invalid_argument);
}

TEST_CASE("restrict") {
    GridPath p(DyadicGrid(1.0, 2), {0.5, 1.0, 0.5, 0.0});
    CHECK(restrict_path(p, 2).levels == p.levels);
    CHECK(restrict_path(p, 1).levels == std::vector<double>{1.0, 0.0});
    CHECK_THROWS_AS(restrict_path(p, 3), std::invalid_argument);
}

TEST_CASE("restrict of refine is the identity, bit exact") {
    std::mt19937 gen(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 5;
        const int m = n + 1 + trial % 4;
        const auto p = random_path(1.0, n, gen);
        CHECK(restrict_path(refine(p, m), n).levels == p.levels);
    }
}

TEST_CASE("path type invariants") {
    CHECK_THROWS_AS(GridPath(DyadicGrid(1.0, 2), {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(IncrementVector(DyadicGrid(1.0, 1), {1.0}), std::invalid_argument);
}

TEST_CASE("serialization round trips") {
    std::mt19937 gen(7);
    const auto p = random_path(1.25, 4, gen);

    const auto from_json = grid_path_from_json(grid_path_to_json(p));
    CHECK(from_json.grid == p.grid);
    CHECK(from_json.levels == p.levels);

    const auto from_csv = grid_path_from_csv(grid_path_to_csv(p));
    CHECK(from_csv.grid.horizon == p.grid.horizon);
    CHECK(from_csv.grid.level == p.grid.level);
    CHECK(from_csv.levels == p.levels);
}
