#include "gmix/sim.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "gmix/estimators.hpp"

namespace gmix {

void PopulationSpec::validate() const {
    if (n_strata < 2) throw StructuralError("PopulationSpec: n_strata must be >= 2");
    if (kappa < 1) throw StructuralError("PopulationSpec: kappa must be >= 1");
    if (kind == Kind::TwoPointSymmetric) {
        if (!(delta > 0.0 && delta < 0.5))
            throw StructuralError("PopulationSpec: delta must lie in (0, 0.5)");
        if (n_strata % 2 != 0)
            throw StructuralError("PopulationSpec: TwoPointSymmetric needs even n_strata");
    } else {
        if (!(lo1 < hi1 && lo2 < hi2) || lo1 < 0.0 || hi1 > 1.0 || lo2 < 0.0 || hi2 > 1.0)
            throw StructuralError("PopulationSpec: uniform blocks must be valid subranges of [0,1]");
    }
}

std::string PopulationSpec::label() const {
    std::ostringstream os;
    if (kind == Kind::TwoPointSymmetric)
        os << "delta=" << delta;
    else
        os << "kappa=" << kappa;
    return os.str();
}

std::vector<ParameterAtom> generate_population(const PopulationSpec& spec, Rng& rng) {
    spec.validate();
    std::vector<ParameterAtom> pop;
    pop.reserve(static_cast<std::size_t>(spec.n_strata));
    const int half = spec.n_strata / 2;
    if (spec.kind == PopulationSpec::Kind::TwoPointSymmetric) {
        for (int i = 0; i < spec.n_strata; ++i) {
            const double v = i < half ? 0.5 - spec.delta : 0.5 + spec.delta;
            pop.push_back(ParameterAtom{v, v});
        }
    } else {
        for (int i = 0; i < spec.n_strata; ++i) {
            const double lo = i < half ? spec.lo1 : spec.lo2;
            const double hi = i < half ? spec.hi1 : spec.hi2;
            const double pi = lo + (hi - lo) * next_unit(rng);
            const double p = lo + (hi - lo) * next_unit(rng);
            pop.push_back(ParameterAtom{pi, p});
        }
    }
    return pop;
}

RepEstimates run_replication(const PopulationSpec& spec, const GridPtr& grid,
                             const SolverConfig& config, Rng& rng) {
    const StrataBinomialModel model(spec.kappa);
    const auto population = generate_population(spec, rng);

    std::vector<Outcome> draws;
    draws.reserve(population.size());
    for (const auto& theta : population) draws.push_back(model.sample(theta, rng));
    const auto obs = ObservationSet::from_draws(draws);

    const auto l = build_likelihood_matrix(model, obs, *grid, CensoringMode::Censored);
    const auto res = fit(obs, l, config, grid);

    RepEstimates est;
    est.naive = eta_naive(obs, model).scalar();
    est.gmle = eta_gmle(res, model).scalar();
    return est;
}

namespace {

ReplicationSummary summarize(std::string name, std::vector<double> xs) {
    ReplicationSummary s;
    s.estimator = std::move(name);
    s.n_reps = static_cast<int>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    s.mean = mean;
    if (xs.size() >= 2) {
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    } else {
        s.sd = std::numeric_limits<double>::quiet_NaN();
    }
    s.estimates = std::move(xs);
    return s;
}

}  // namespace

std::vector<TableRow> run_table(const std::vector<PopulationSpec>& specs, int n_reps,
                                const GridPtr& grid, const SolverConfig& config,
                                std::uint64_t master_seed, int n_threads) {
    if (n_reps < 1) throw StructuralError("run_table: n_reps must be >= 1");
    if (n_threads < 1) n_threads = 1;

    std::vector<TableRow> rows;
    for (std::size_t d = 0; d < specs.size(); ++d) {
        specs[d].validate();
        std::vector<double> naive(static_cast<std::size_t>(n_reps));
        std::vector<double> gmle(static_cast<std::size_t>(n_reps));

        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= n_reps) return;
                const std::uint64_t seed =
                    split_seed(master_seed, d * static_cast<std::uint64_t>(n_reps) +
                                                static_cast<std::uint64_t>(r));
                Rng rng(seed);
                try {
                    const auto est = run_replication(specs[d], grid, config, rng);
                    naive[static_cast<std::size_t>(r)] = est.naive;
                    gmle[static_cast<std::size_t>(r)] = est.gmle;
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure)
                        failure = std::make_exception_ptr(StructuralError(
                            "replication " + std::to_string(r) + " of design " +
                            specs[d].label() + ": " + e.what()));
                    return;
                }
            }
        };

        if (n_threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        if (failure) std::rethrow_exception(failure);

        rows.push_back(TableRow{specs[d].label(), summarize("naive", std::move(naive)),
                                summarize("gmle", std::move(gmle))});
    }
    return rows;
}

std::vector<PopulationSpec> table1_specs(int n_strata) {
    std::vector<PopulationSpec> specs;
    for (double delta : {0.3, 0.2, 0.1}) {
        PopulationSpec s;
        s.kind = PopulationSpec::Kind::TwoPointSymmetric;
        s.delta = delta;
        s.n_strata = n_strata;
        s.kappa = 4;
        specs.push_back(s);
    }
    return specs;
}

std::vector<PopulationSpec> table2_specs(int n_strata) {
    std::vector<PopulationSpec> specs;
    for (int kappa = 1; kappa <= 5; ++kappa) {
        PopulationSpec s;
        s.kind = PopulationSpec::Kind::TwoBlockUniform;
        s.n_strata = n_strata;
        s.kappa = kappa;
        specs.push_back(s);
    }
    return specs;
}

}  // namespace gmix
