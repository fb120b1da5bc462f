#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "gmix/estimators.hpp"
#include "gmix/grid.hpp"
#include "gmix/sim.hpp"
#include "gmle_io.hpp"

using namespace gmix;
using gmix::io::DataError;

TEST_SUITE("io") {

TEST_CASE("model factory") {
    io::ModelSpec spec;
    spec.name = "bernoulli";
    CHECK(io::make_model(spec)->name() == "bernoulli");
    spec.name = "survey-geometric";
    CHECK(io::make_model(spec)->name() == "survey-geometric");
    spec.name = "no-such-model";
    CHECK_THROWS_AS(io::make_model(spec), DataError);
}

TEST_CASE("bernoulli layout") {
    BernoulliModel m;
    std::istringstream in("y\n0\n1\n1\n");
    const auto draws = io::read_observations(in, m);
    REQUIRE(draws.size() == 3);
    CHECK(draws[0] == Outcome::observed(0));
    CHECK(draws[2] == Outcome::observed(1));
}

TEST_CASE("strata layout maps kappa_obs = 0 to non-response") {
    StrataBinomialModel m(4);
    std::istringstream in("X,kappa_obs\n3,4\n0,0\n1,2\n");
    const auto draws = io::read_observations(in, m);
    REQUIRE(draws.size() == 3);
    CHECK(draws[0] == Outcome::observed(3, 4));
    CHECK(draws[1] == Outcome::non_response());
}

TEST_CASE("survey layout maps attempts = 0 to non-response") {
    SurveyGeometricModel m(2, 2);
    std::istringstream in("category_index,attempts\n1,2\n0,0\n2,1\n");
    const auto draws = io::read_observations(in, m);
    REQUIRE(draws.size() == 3);
    CHECK(draws[0] == Outcome::observed(1, 2));
    CHECK(draws[1] == Outcome::non_response());
}

TEST_CASE("parse errors carry the offending line number") {
    StrataBinomialModel m(4);

    std::istringstream bad_header("foo,bar\n1,1\n");
    CHECK_THROWS_WITH_AS(io::read_observations(bad_header, m),
                         doctest::Contains("unrecognized header"), DataError);

    std::istringstream bad_int("X,kappa_obs\n1,1\nx,2\n");
    CHECK_THROWS_WITH_AS(io::read_observations(bad_int, m), doctest::Contains("line 3"),
                         DataError);

    std::istringstream nr_with_x("X,kappa_obs\n2,0\n");
    CHECK_THROWS_WITH_AS(io::read_observations(nr_with_x, m),
                         doctest::Contains("requires X=0"), DataError);

    std::istringstream off_support("X,kappa_obs\n5,4\n");
    CHECK_THROWS_WITH_AS(io::read_observations(off_support, m),
                         doctest::Contains("not in the support"), DataError);

    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_observations(empty, m), DataError);

    std::istringstream header_only("X,kappa_obs\n");
    CHECK_THROWS_WITH_AS(io::read_observations(header_only, m),
                         doctest::Contains("no observation rows"), DataError);
}

TEST_CASE("full-precision formatting round-trips doubles") {
    for (double x : {0.1, 1.0 / 3.0, 1e-17, -2.5, 0.0, 12345.6789})
        CHECK(std::stod(io::fmt_full(x)) == x);
    CHECK(io::fmt_sig6(0.123456789) == "0.123457");
}

TEST_CASE("fit csv round-trips the mixing distribution") {
    StrataBinomialModel m(2);
    const auto obs = ObservationSet({{Outcome::observed(1, 2), 3},
                                     {Outcome::observed(0, 1), 2},
                                     {Outcome::non_response(), 5}});
    auto grid = std::make_shared<ParameterGrid>(
        product_grid({linspace(0.1, 0.9, 5), linspace(0.1, 0.9, 5)}));
    const auto l = build_likelihood_matrix(m, obs, *grid, CensoringMode::Censored);
    SolverConfig cfg;
    cfg.rel_tol = 0.0;
    cfg.kkt_tol = 1e-8;
    cfg.max_iters = 100000;
    const auto fr = fit(obs, l, cfg, grid);
    const auto eta = eta_gmle(fr, m);

    std::ostringstream out;
    io::write_fit_csv(out, fr, m, obs, eta);
    std::istringstream back(out.str());
    const auto g = io::read_weights_csv(back);
    REQUIRE(g.size() == fr.g_hat.size());
    double eta_back = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(g.grid().atom(j) == fr.g_hat.grid().atom(j));
        CHECK(g.weight(j) == fr.g_hat.weight(j));  // shortest round-trip, exact
        eta_back += g.weight(j) * m.eta(g.grid().atom(j))[0];
    }
    CHECK(eta_back == doctest::Approx(eta.scalar()).epsilon(1e-9));
    CHECK(out.str().find("summary,model,strata-binomial") != std::string::npos);
    CHECK(out.str().find("marginal,NR,5,") != std::string::npos);
}

TEST_CASE("table csv prints NA for an undefined standard deviation") {
    ReplicationSummary one;
    one.estimator = "naive";
    one.mean = 0.5;
    one.sd = std::numeric_limits<double>::quiet_NaN();
    one.n_reps = 1;
    one.estimates = {0.5};
    TableRow row{"delta=0.3", one, one};
    std::ostringstream out;
    io::write_table_csv(out, {row});
    CHECK(out.str() ==
          "design,naive_mean,naive_sd,gmle_mean,gmle_sd,n_reps\n"
          "delta=0.3,0.5,NA,0.5,NA,1\n");
}

TEST_CASE("weights csv rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_weights_csv(empty), DataError);
    std::istringstream bad_header("nope\n");
    CHECK_THROWS_AS(io::read_weights_csv(bad_header), DataError);
    std::istringstream short_row("atom,coord_0,weight\natom,0.5\n");
    CHECK_THROWS_WITH_AS(io::read_weights_csv(short_row), doctest::Contains("line 2"),
                         DataError);
}

}  // TEST_SUITE
