#include <benchmark/benchmark.h>

#include <memory>

#include "gmix/grid.hpp"
#include "gmix/models.hpp"
#include "gmix/sim.hpp"
#include "gmix/solver.hpp"

using namespace gmix;

namespace {

// One table-scale replication worth of data: 1000 strata, kappa = 4,
// two-point population, censored likelihood on a 21 x 21 grid.
struct Problem {
    GridPtr grid;
    ObservationSet obs;
    LikelihoodMatrix l;
};

Problem make_problem() {
    PopulationSpec spec;
    spec.kind = PopulationSpec::Kind::TwoPointSymmetric;
    spec.delta = 0.3;
    spec.n_strata = 1000;
    spec.kappa = 4;
    StrataBinomialModel model(spec.kappa);
    Rng rng(12345);
    const auto pop = generate_population(spec, rng);
    std::vector<Outcome> draws;
    for (const auto& theta : pop) draws.push_back(model.sample(theta, rng));
    auto obs = ObservationSet::from_draws(draws);
    auto grid = std::make_shared<ParameterGrid>(
        product_grid({linspace(0.0, 1.0, 21), linspace(0.0, 1.0, 21)}));
    auto l = build_likelihood_matrix(model, obs, *grid, CensoringMode::Censored);
    return Problem{std::move(grid), std::move(obs), std::move(l)};
}

void BM_em_step(benchmark::State& state) {
    const auto p = make_problem();
    auto g = MixingDistribution::uniform(p.grid);
    for (auto _ : state) {
        g = em_step(g, p.obs, p.l);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_em_step);

void BM_fit_table_tolerance(benchmark::State& state) {
    const auto p = make_problem();
    SolverConfig cfg;
    cfg.rel_tol = 0.0;
    cfg.kkt_tol = 1e-4;
    cfg.max_iters = 200000;
    for (auto _ : state) {
        auto fr = fit(p.obs, p.l, cfg, p.grid);
        benchmark::DoNotOptimize(fr);
    }
}
BENCHMARK(BM_fit_table_tolerance)->Unit(benchmark::kMillisecond);

void BM_build_likelihood(benchmark::State& state) {
    PopulationSpec spec;
    spec.n_strata = 1000;
    StrataBinomialModel model(4);
    Rng rng(6789);
    const auto pop = generate_population(spec, rng);
    std::vector<Outcome> draws;
    for (const auto& theta : pop) draws.push_back(model.sample(theta, rng));
    const auto obs = ObservationSet::from_draws(draws);
    const auto grid = product_grid({linspace(0.0, 1.0, 21), linspace(0.0, 1.0, 21)});
    for (auto _ : state) {
        auto l = build_likelihood_matrix(model, obs, grid, CensoringMode::Censored);
        benchmark::DoNotOptimize(l);
    }
}
BENCHMARK(BM_build_likelihood)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
