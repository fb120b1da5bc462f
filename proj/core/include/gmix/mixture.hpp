#ifndef GMIX_MIXTURE_HPP
#define GMIX_MIXTURE_HPP

#include <vector>

#include "gmix/types.hpp"

namespace gmix {

/// Mixture marginals f_G(y_i) = sum_j w_j L[i][j], one per outcome row.
std::vector<double> marginal_density(const MixingDistribution& g, const LikelihoodMatrix& l);

/// sum_i count_i * log f_G(y_i); kMinusInfinity when an observed outcome
/// has zero marginal.
double log_likelihood(const MixingDistribution& g, const ObservationSet& obs,
                      const LikelihoodMatrix& l);

/// Posterior P(theta_j | y_row) under prior G. Throws InvalidQueryError
/// when the row marginal is zero.
std::vector<double> posterior_weights(const MixingDistribution& g, const LikelihoodMatrix& l,
                                      std::size_t row);

}  // namespace gmix

#endif  // GMIX_MIXTURE_HPP
