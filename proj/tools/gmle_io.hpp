#ifndef GMLE_IO_HPP
#define GMLE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gmix/estimators.hpp"
#include "gmix/models.hpp"
#include "gmix/sim.hpp"
#include "gmix/solver.hpp"

namespace gmix::io {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model construction from CLI hyper-parameters.
struct ModelSpec {
    std::string name = "strata-binomial";
    int kappa = 4;        // strata-binomial
    int max_attempts = 2; // survey-geometric K
    int n_categories = 2; // survey-geometric S
    double lambda_max = 5.0;  // poisson-binomial
};

ModelPtr make_model(const ModelSpec& spec);

/// Reads a comma-delimited observation file (header row required):
///   bernoulli:          y
///   strata-binomial:    X,kappa_obs           (kappa_obs = 0 -> non-response)
///   poisson-binomial:   X,kappa_obs           (kappa_obs = 0 -> non-response)
///   survey-geometric:   category_index,attempts  (attempts = 0 -> non-response)
/// Throws DataError with the offending line number.
std::vector<Outcome> read_observations(std::istream& in, const Model& model);
std::vector<Outcome> read_observations_file(const std::string& path, const Model& model);

/// Shortest round-trip decimal representation.
std::string fmt_full(double x);
/// Fixed 6 significant digits for table output.
std::string fmt_sig6(double x);

/// csv fit output: one "atom,<coords...>,<weight>" row per grid atom, then
/// summary and per-outcome marginal blocks. Full precision.
void write_fit_csv(std::ostream& out, const FitResult& fit, const Model& model,
                   const ObservationSet& obs, const EstimateReport& eta);

/// Re-reads the atom/weight rows of write_fit_csv output.
MixingDistribution read_weights_csv(std::istream& in);

/// Human-readable fit report, 6 significant digits.
void write_fit_table(std::ostream& out, const FitResult& fit, const Model& model,
                     const ObservationSet& obs, const EstimateReport& eta);

/// Simulation summaries; csv is full precision, table is 6 significant
/// digits. sd prints as NA when undefined (single replication).
void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows);
void write_table_human(std::ostream& out, const std::vector<TableRow>& rows);

}  // namespace gmix::io

#endif  // GMLE_IO_HPP
