#ifndef GMIX_SIM_HPP
#define GMIX_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gmix/models.hpp"
#include "gmix/solver.hpp"
#include "gmix/types.hpp"

namespace gmix {

/// Simulated population of stratum parameters (pi_i, p_i) for the
/// strata-binomial design.
struct PopulationSpec {
    enum class Kind {
        // 500/500 split at pi = p = 0.5 -+ delta (n_strata even).
        TwoPointSymmetric,
        // Half the strata draw pi_i, p_i iid U(lo1, hi1), half U(lo2, hi2).
        TwoBlockUniform,
    };

    Kind kind = Kind::TwoPointSymmetric;
    double delta = 0.3;  // TwoPointSymmetric
    double lo1 = 0.1, hi1 = 0.6, lo2 = 0.4, hi2 = 0.9;  // TwoBlockUniform
    int n_strata = 1000;
    int kappa = 4;  // attempted sample size per stratum

    void validate() const;
    std::string label() const;
};

struct ReplicationSummary {
    std::string estimator;
    double mean = 0.0;
    double sd = 0.0;  // (n_reps - 1) divisor; NaN when n_reps < 2
    int n_reps = 0;
    std::vector<double> estimates;  // per-rep, in rep order
};

struct TableRow {
    std::string design;
    ReplicationSummary naive;
    ReplicationSummary gmle;
};

/// Stratum parameter atoms, deterministic given the rng state.
std::vector<ParameterAtom> generate_population(const PopulationSpec& spec, Rng& rng);

struct RepEstimates {
    double naive = 0.0;
    double gmle = 0.0;
};

/// One replication: draws a population, samples one censored outcome per
/// stratum, fits the GMLE, returns both estimates.
RepEstimates run_replication(const PopulationSpec& spec, const GridPtr& grid,
                             const SolverConfig& config, Rng& rng);

/// Replicated experiment over a list of designs. Replication r of design d
/// uses seed split_seed(master_seed, d * n_reps + r), so the experiment
/// structure is reproducible from the master seed alone. Replications may
/// run on n_threads workers; output is ordered by replication index either
/// way.
std::vector<TableRow> run_table(const std::vector<PopulationSpec>& specs, int n_reps,
                                const GridPtr& grid, const SolverConfig& config,
                                std::uint64_t master_seed, int n_threads = 1);

/// Table 1 designs: delta in {0.3, 0.2, 0.1}, kappa = 4.
std::vector<PopulationSpec> table1_specs(int n_strata = 1000);

/// Table 2 designs: kappa in {1,...,5}, two uniform blocks
/// U(0.1, 0.6) and U(0.4, 0.9).
std::vector<PopulationSpec> table2_specs(int n_strata = 1000);

}  // namespace gmix

#endif  // GMIX_SIM_HPP
