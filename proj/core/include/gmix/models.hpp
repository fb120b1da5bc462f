#ifndef GMIX_MODELS_HPP
#define GMIX_MODELS_HPP

#include <memory>
#include <string>
#include <vector>

#include "gmix/rng.hpp"
#include "gmix/types.hpp"

namespace gmix {

/// Contract every observation model implements: a finite outcome support,
/// component densities under the three censoring modes, response-set
/// membership A, the respondent statistic h(y), and the estimand
/// eta(theta) = E_theta(h(Y) | A).
class Model {
  public:
    virtual ~Model() = default;

    virtual std::string name() const = 0;

    /// Complete finite outcome support, fixed order. Includes the
    /// non-response (and, where present, overflow) outcomes.
    virtual std::vector<Outcome> support() const = 0;

    /// f(y|theta) on the full support; probabilities sum to 1 over support().
    virtual double full_density(const Outcome& y, const ParameterAtom& theta) const = 0;

    virtual bool in_A(const Outcome& y) const = 0;

    /// Respondent statistic; defined only for y in A.
    virtual std::vector<double> h(const Outcome& y) const = 0;

    virtual std::vector<double> eta(const ParameterAtom& theta) const = 0;
    virtual std::size_t eta_dim() const = 0;

    virtual std::size_t theta_dim() const = 0;

    /// Throws StructuralError when theta violates the declared ranges.
    virtual void validate_atom(const ParameterAtom& theta) const = 0;

    /// P_theta(Y in A).
    double prob_A(const ParameterAtom& theta) const;

    /// Density under the requested censoring mode. Truncated mode rejects
    /// outcomes outside A.
    double density(const Outcome& y, const ParameterAtom& theta, CensoringMode mode) const;

    /// One draw from density(., theta, Censored) by inverse CDF over the
    /// support; deterministic given the rng state.
    Outcome sample(const ParameterAtom& theta, Rng& rng) const;

    /// Uniform random atom in the declared parameter ranges (test helper).
    virtual ParameterAtom random_atom(Rng& rng) const = 0;
};

using ModelPtr = std::shared_ptr<const Model>;

/// Example 1: Y ~ Bernoulli(p), theta = (p), no censoring (A = support).
class BernoulliModel final : public Model {
  public:
    std::string name() const override { return "bernoulli"; }
    std::vector<Outcome> support() const override;
    double full_density(const Outcome& y, const ParameterAtom& theta) const override;
    bool in_A(const Outcome& y) const override;
    std::vector<double> h(const Outcome& y) const override;
    std::vector<double> eta(const ParameterAtom& theta) const override;
    std::size_t eta_dim() const override { return 1; }
    std::size_t theta_dim() const override { return 1; }
    void validate_atom(const ParameterAtom& theta) const override;
    ParameterAtom random_atom(Rng& rng) const override;
};

/// Strata sampling with binomial response: kappa_obs ~ B(kappa, pi),
/// X | kappa_obs ~ B(kappa_obs, p), theta = (pi, p). kappa_obs = 0 is the
/// non-response outcome.
class StrataBinomialModel final : public Model {
  public:
    explicit StrataBinomialModel(int kappa);

    int kappa() const { return kappa_; }

    std::string name() const override { return "strata-binomial"; }
    std::vector<Outcome> support() const override;
    double full_density(const Outcome& y, const ParameterAtom& theta) const override;
    bool in_A(const Outcome& y) const override;
    std::vector<double> h(const Outcome& y) const override;
    std::vector<double> eta(const ParameterAtom& theta) const override;
    std::size_t eta_dim() const override { return 1; }
    std::size_t theta_dim() const override { return 2; }
    void validate_atom(const ParameterAtom& theta) const override;
    ParameterAtom random_atom(Rng& rng) const override;

  private:
    int kappa_;
};

/// Survey with at most K contact attempts: attempts ~ truncated
/// Geometric(pi), response category s with probability p_s, X independent
/// of the attempt count given theta. theta = (pi, p_1, ..., p_S).
/// Outcomes are (s, k) for 1 <= s <= S, 1 <= k <= K, plus NonResponse.
class SurveyGeometricModel final : public Model {
  public:
    SurveyGeometricModel(int max_attempts, int n_categories);

    int max_attempts() const { return K_; }
    int n_categories() const { return S_; }

    std::string name() const override { return "survey-geometric"; }
    std::vector<Outcome> support() const override;
    double full_density(const Outcome& y, const ParameterAtom& theta) const override;
    bool in_A(const Outcome& y) const override;
    std::vector<double> h(const Outcome& y) const override;
    std::vector<double> eta(const ParameterAtom& theta) const override;
    std::size_t eta_dim() const override { return static_cast<std::size_t>(S_); }
    std::size_t theta_dim() const override { return static_cast<std::size_t>(S_) + 1; }
    void validate_atom(const ParameterAtom& theta) const override;
    ParameterAtom random_atom(Rng& rng) const override;

  private:
    int K_, S_;
};

/// Convenience sample per stratum: kappa_obs ~ Poisson(lambda),
/// X | kappa_obs ~ B(kappa_obs, p), theta = (lambda, p). The count support
/// is truncated at kappa_cap, the smallest integer whose Poisson tail at
/// lambda_max is below 1e-9; the tail mass sits on a distinguished
/// Overflow outcome outside A.
class PoissonBinomialModel final : public Model {
  public:
    explicit PoissonBinomialModel(double lambda_max);

    double lambda_max() const { return lambda_max_; }
    int kappa_cap() const { return kappa_cap_; }

    std::string name() const override { return "poisson-binomial"; }
    std::vector<Outcome> support() const override;
    double full_density(const Outcome& y, const ParameterAtom& theta) const override;
    bool in_A(const Outcome& y) const override;
    std::vector<double> h(const Outcome& y) const override;
    std::vector<double> eta(const ParameterAtom& theta) const override;
    std::size_t eta_dim() const override { return 1; }
    std::size_t theta_dim() const override { return 2; }
    void validate_atom(const ParameterAtom& theta) const override;
    ParameterAtom random_atom(Rng& rng) const override;

  private:
    double lambda_max_;
    int kappa_cap_;
};

/// Builds the per-(observed outcome, grid atom) density matrix for the
/// given censoring mode and validates it.
LikelihoodMatrix build_likelihood_matrix(const Model& model, const ObservationSet& obs,
                                         const ParameterGrid& grid, CensoringMode mode);

/// min_j P_{theta_j}(A) over the grid (Assumption 1(ii) diagnostic).
double delta_min(const Model& model, const ParameterGrid& grid);

}  // namespace gmix

#endif  // GMIX_MODELS_HPP
