#include <doctest.h>

#include <cmath>

#include "gmix/grid.hpp"

using namespace gmix;

TEST_SUITE("grid") {

TEST_CASE("linspace endpoints are exact") {
    const auto v = linspace(0.0, 1.0, 41);
    REQUIRE(v.size() == 41);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 1.0);
    CHECK(v[20] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(linspace(0.3, 0.3, 1) == std::vector<double>{0.3});
}

TEST_CASE("product grid enumerates the cartesian product, last axis fastest") {
    const auto g = product_grid({{0.0, 1.0}, {0.1, 0.2, 0.3}});
    REQUIRE(g.size() == 6);
    CHECK(g.atom(0) == ParameterAtom{0.0, 0.1});
    CHECK(g.atom(1) == ParameterAtom{0.0, 0.2});
    CHECK(g.atom(3) == ParameterAtom{1.0, 0.1});
    CHECK(g.atom(5) == ParameterAtom{1.0, 0.3});
}

TEST_CASE("simplex lattice enumerates compositions and sums to one exactly") {
    const auto pts = simplex_lattice(3, 4);
    // C(4 + 2, 2) = 15 compositions of 4 into 3 parts
    CHECK(pts.size() == 15);
    for (const auto& p : pts) {
        double sum = 0.0;
        for (double x : p) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == 1.0);  // last coordinate is pinned, so exact
    }
    const auto edge = simplex_lattice(2, 2);
    REQUIRE(edge.size() == 3);
    CHECK(edge[0][0] == 0.0);
    CHECK(edge[2][0] == 1.0);
}

TEST_CASE("survey grid crosses the pi axis with the simplex lattice") {
    const auto g = survey_grid({0.25, 0.75}, 2, 4);
    CHECK(g.size() == 2 * 5);
    for (const auto& atom : g.atoms()) {
        REQUIRE(atom.dim() == 3);
        CHECK((atom[0] == 0.25 || atom[0] == 0.75));
        CHECK(atom[1] + atom[2] == 1.0);
    }
}

}  // TEST_SUITE
