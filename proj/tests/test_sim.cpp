#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "gmix/grid.hpp"
#include "gmix/sim.hpp"

using namespace gmix;

namespace {

GridPtr coarse_grid() {
    return std::make_shared<ParameterGrid>(
        product_grid({linspace(0.0, 1.0, 11), linspace(0.0, 1.0, 11)}));
}

SolverConfig quick_config() {
    SolverConfig cfg;
    cfg.rel_tol = 0.0;
    cfg.kkt_tol = 1e-3;
    cfg.max_iters = 20000;
    return cfg;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("population spec validation") {
    PopulationSpec s;
    s.delta = 0.5;
    CHECK_THROWS_AS(s.validate(), StructuralError);
    s.delta = 0.3;
    s.n_strata = 999;
    CHECK_THROWS_AS(s.validate(), StructuralError);
    s.n_strata = 1000;
    CHECK_NOTHROW(s.validate());

    PopulationSpec u;
    u.kind = PopulationSpec::Kind::TwoBlockUniform;
    u.lo1 = 0.6;
    u.hi1 = 0.1;
    CHECK_THROWS_AS(u.validate(), StructuralError);
}

TEST_CASE("two-point population: half the strata at each value") {
    PopulationSpec s;
    s.kind = PopulationSpec::Kind::TwoPointSymmetric;
    s.delta = 0.3;
    s.n_strata = 10;
    Rng rng(1);
    const auto pop = generate_population(s, rng);
    REQUIRE(pop.size() == 10);
    int low = 0, high = 0;
    for (const auto& theta : pop) {
        CHECK(theta[0] == theta[1]);
        if (theta[0] == 0.2) ++low;
        if (theta[0] == 0.8) ++high;
    }
    CHECK(low == 5);
    CHECK(high == 5);
}

TEST_CASE("two-block population: draws land in the block ranges, deterministic by seed") {
    PopulationSpec s;
    s.kind = PopulationSpec::Kind::TwoBlockUniform;
    s.n_strata = 100;
    Rng rng(42);
    const auto pop = generate_population(s, rng);
    for (int i = 0; i < 50; ++i) {
        CHECK(pop[i][0] >= 0.1);
        CHECK(pop[i][0] <= 0.6);
        CHECK(pop[i][1] >= 0.1);
        CHECK(pop[i][1] <= 0.6);
    }
    for (int i = 50; i < 100; ++i) {
        CHECK(pop[i][0] >= 0.4);
        CHECK(pop[i][0] <= 0.9);
    }
    Rng rng2(42);
    const auto pop2 = generate_population(s, rng2);
    CHECK(pop == pop2);
}

TEST_CASE("replications are deterministic given the rng state") {
    PopulationSpec s;
    s.kind = PopulationSpec::Kind::TwoPointSymmetric;
    s.delta = 0.3;
    s.n_strata = 200;
    const auto grid = coarse_grid();
    Rng r1(314), r2(314);
    const auto a = run_replication(s, grid, quick_config(), r1);
    const auto b = run_replication(s, grid, quick_config(), r2);
    CHECK(a.naive == b.naive);
    CHECK(a.gmle == b.gmle);
    CHECK(a.naive >= 0.0);
    CHECK(a.naive <= 1.0);
    CHECK(a.gmle >= 0.0);
    CHECK(a.gmle <= 1.0);
}

TEST_CASE("run_table is reproducible from the master seed and ordered by replication") {
    PopulationSpec s;
    s.kind = PopulationSpec::Kind::TwoBlockUniform;
    s.n_strata = 100;
    s.kappa = 2;
    const auto grid = coarse_grid();
    const auto rows1 = run_table({s}, 4, grid, quick_config(), 2024, 1);
    const auto rows2 = run_table({s}, 4, grid, quick_config(), 2024, 2);
    REQUIRE(rows1.size() == 1);
    REQUIRE(rows2.size() == 1);
    CHECK(rows1[0].naive.estimates == rows2[0].naive.estimates);
    CHECK(rows1[0].gmle.estimates == rows2[0].gmle.estimates);

    // summary statistics recomputed from the retained estimates
    const auto& g = rows1[0].gmle;
    REQUIRE(g.n_reps == 4);
    double mean = 0.0;
    for (double x : g.estimates) mean += x;
    mean /= 4.0;
    CHECK(g.mean == doctest::Approx(mean).epsilon(1e-15));
    double ss = 0.0;
    for (double x : g.estimates) ss += (x - mean) * (x - mean);
    CHECK(g.sd == doctest::Approx(std::sqrt(ss / 3.0)).epsilon(1e-12));
}

TEST_CASE("single replication reports NaN standard deviation") {
    PopulationSpec s;
    s.kind = PopulationSpec::Kind::TwoPointSymmetric;
    s.delta = 0.2;
    s.n_strata = 100;
    const auto rows = run_table({s}, 1, coarse_grid(), quick_config(), 7, 1);
    CHECK(rows[0].naive.n_reps == 1);
    CHECK(std::isnan(rows[0].naive.sd));
    CHECK(std::isnan(rows[0].gmle.sd));
}

TEST_CASE("preset design lists") {
    const auto t1 = table1_specs();
    REQUIRE(t1.size() == 3);
    CHECK(t1[0].label() == "delta=0.3");
    CHECK(t1[2].label() == "delta=0.1");
    for (const auto& s : t1) {
        CHECK(s.kappa == 4);
        CHECK(s.n_strata == 1000);
    }
    const auto t2 = table2_specs();
    REQUIRE(t2.size() == 5);
    CHECK(t2[0].label() == "kappa=1");
    CHECK(t2[4].label() == "kappa=5");
    for (const auto& s : t2) {
        CHECK(s.lo1 == 0.1);
        CHECK(s.hi1 == 0.6);
        CHECK(s.lo2 == 0.4);
        CHECK(s.hi2 == 0.9);
    }
}

}  // TEST_SUITE
