#ifndef GMIX_GRID_HPP
#define GMIX_GRID_HPP

#include <vector>

#include "gmix/types.hpp"

namespace gmix {

/// n equally spaced points on [lo, hi], endpoints inclusive. n = 1 gives {lo}.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Cartesian product of per-coordinate axes, last axis fastest.
ParameterGrid product_grid(const std::vector<std::vector<double>>& axes);

/// Uniform lattice on the (dim-1)-simplex: all points (k_1/r, ..., k_dim/r)
/// with nonnegative integers summing to r. The last coordinate is pinned
/// to 1 - sum of the others so the constraint holds exactly.
std::vector<std::vector<double>> simplex_lattice(std::size_t dim, std::size_t resolution);

/// Grid for the survey model: pi axis crossed with a simplex lattice over
/// the category probabilities.
ParameterGrid survey_grid(const std::vector<double>& pi_axis, std::size_t n_categories,
                          std::size_t simplex_resolution);

}  // namespace gmix

#endif  // GMIX_GRID_HPP
