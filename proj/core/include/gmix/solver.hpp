#ifndef GMIX_SOLVER_HPP
#define GMIX_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gmix/mixture.hpp"
#include "gmix/types.hpp"

namespace gmix {

struct SolverConfig {
    int max_iters = 10000;
    double rel_tol = 1e-10;   // relative log-likelihood change stop rule
    double kkt_tol = 1e-6;    // first-order optimality certificate
    int n_starts = 1;
    enum class Init { Uniform, DirichletRandom } init = Init::Uniform;
    std::uint64_t seed = 0;

    void validate() const;
};

struct FitResult {
    MixingDistribution g_hat;
    std::vector<double> loglik_trace;
    std::vector<double> fitted_marginals;
    double kkt_gap = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<std::string> warnings;

    double loglik() const { return loglik_trace.back(); }
};

/// One multiplicative EM update:
/// w'_j = w_j * (1/n) * sum_i count_i * L[i][j] / f_G(y_i).
MixingDistribution em_step(const MixingDistribution& g, const ObservationSet& obs,
                           const LikelihoodMatrix& l);

/// max_j (1/n) sum_i count_i L[i][j] / f_G(y_i) - 1; <= 0 (up to rounding)
/// certifies a global maximizer of the concave likelihood.
double kkt_gap(const MixingDistribution& g, const ObservationSet& obs,
               const LikelihoodMatrix& l);

/// EM from the configured init until the relative log-likelihood change
/// drops below rel_tol, the KKT gap drops below kkt_tol, or max_iters.
FitResult fit(const ObservationSet& obs, const LikelihoodMatrix& l, const SolverConfig& config,
              const GridPtr& grid);

/// fit() with explicit initial weights.
FitResult fit_from(const ObservationSet& obs, const LikelihoodMatrix& l,
                   const SolverConfig& config, MixingDistribution init);

/// Independent fits from Dirichlet(1,...,1) initial weights with per-start
/// seeds split from config.seed; results in start order.
std::vector<FitResult> multi_start_fit(const ObservationSet& obs, const LikelihoodMatrix& l,
                                       const SolverConfig& config, const GridPtr& grid);

}  // namespace gmix

#endif  // GMIX_SOLVER_HPP
