#ifndef GMIX_ESTIMATORS_HPP
#define GMIX_ESTIMATORS_HPP

#include <map>
#include <string>
#include <vector>

#include "gmix/models.hpp"
#include "gmix/solver.hpp"
#include "gmix/types.hpp"

namespace gmix {

enum class EstimatorKind { GMLE, Naive, Weighted };

std::string to_string(EstimatorKind kind);

struct EstimateReport {
    std::vector<double> eta_hat;
    EstimatorKind kind;
    std::map<std::string, double> diagnostics;

    double scalar() const { return eta_hat.front(); }
};

/// Plug-in estimate eta_hat = sum_j w_j eta(theta_j) from a fitted mixing
/// distribution.
EstimateReport eta_gmle(const FitResult& fit, const Model& model);

/// Respondents-only average of h(y), weighted by counts; throws when no
/// outcome lies in A.
EstimateReport eta_naive(const ObservationSet& obs, const Model& model);

/// Weighted-average estimator M-hat: respondent weights applied to h(Y_i)
/// directly, non-respondent weight mass imputed from the GMLE fit. The
/// imputed per-non-respondent value is chosen so that equal weights
/// reproduce eta_gmle exactly. Labeled heuristic (no consistency claim).
EstimateReport eta_weighted(const std::vector<std::pair<Outcome, double>>& weighted_obs,
                            const FitResult& fit, const Model& model);

/// Second representation of the plug-in estimate:
/// sum over y in A of h(y) * f^A_G(y), computed over the full support.
/// Agrees with eta_gmle within a multiple of the KKT gap at a converged fit.
std::vector<double> eta_via_support(const MixingDistribution& g, const Model& model);

}  // namespace gmix

#endif  // GMIX_ESTIMATORS_HPP
