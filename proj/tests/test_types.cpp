#include <doctest.h>

#include "gmix/types.hpp"

using namespace gmix;

TEST_SUITE("types") {

TEST_CASE("grid rejects empties and duplicates") {
    CHECK_THROWS_AS(ParameterGrid({}), StructuralError);
    CHECK_THROWS_AS(ParameterGrid({ParameterAtom{0.5}, ParameterAtom{0.5}}), StructuralError);
    CHECK_THROWS_AS(ParameterGrid({ParameterAtom{0.5}, ParameterAtom{0.5, 0.2}}),
                    StructuralError);
    const ParameterGrid g({ParameterAtom{0.25}, ParameterAtom{0.75}});
    CHECK(g.size() == 2);
    CHECK(g.atom(0)[0] == 0.25);
}

TEST_CASE("mixing distribution validates the simplex") {
    auto grid = std::make_shared<ParameterGrid>(
        std::vector<ParameterAtom>{ParameterAtom{0.25}, ParameterAtom{0.75}});
    CHECK_THROWS_AS(MixingDistribution(grid, {0.5}), StructuralError);
    CHECK_THROWS_AS(MixingDistribution(grid, {-0.1, 1.1}), StructuralError);
    CHECK_THROWS_AS(MixingDistribution(grid, {0.6, 0.6}), StructuralError);
    const auto u = MixingDistribution::uniform(grid);
    CHECK(u.weight(0) == doctest::Approx(0.5));
}

TEST_CASE("observation set deduplicates and counts") {
    const auto obs = ObservationSet::from_draws(
        {Outcome::observed(1), Outcome::non_response(), Outcome::observed(1)});
    CHECK(obs.n() == 3);
    CHECK(obs.n_rows() == 2);
    long total = 0;
    for (const auto& [y, c] : obs.entries()) total += c;
    CHECK(total == obs.n());

    CHECK_THROWS_AS(ObservationSet({{Outcome::observed(1), 0}}), StructuralError);
    CHECK_THROWS_AS(
        ObservationSet({{Outcome::observed(1), 1}, {Outcome::observed(1), 2}}),
        StructuralError);
}

TEST_CASE("observation order is canonical regardless of draw order") {
    const auto a = ObservationSet::from_draws(
        {Outcome::observed(0), Outcome::observed(1), Outcome::non_response()});
    const auto b = ObservationSet::from_draws(
        {Outcome::non_response(), Outcome::observed(1), Outcome::observed(0)});
    REQUIRE(a.n_rows() == b.n_rows());
    for (std::size_t i = 0; i < a.n_rows(); ++i) CHECK(a.entries()[i] == b.entries()[i]);
}

TEST_CASE("likelihood matrix validation") {
    LikelihoodMatrix l(2, 2, CensoringMode::Full);
    l.at(0, 0) = 0.5;
    CHECK_THROWS_AS(l.validate(), StructuralError);  // row 1 all zero
    l.at(1, 1) = 0.5;
    CHECK_NOTHROW(l.validate());
    l.at(0, 1) = -0.1;
    CHECK_THROWS_AS(l.validate(), StructuralError);
}

}  // TEST_SUITE
