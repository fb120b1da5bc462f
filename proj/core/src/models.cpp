#include "gmix/models.hpp"

#include <cmath>

namespace gmix {

namespace {

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binom_pmf(int n, int k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

double poisson_pmf(int k, double lambda) {
    if (k < 0) return 0.0;
    return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw StructuralError(std::string(what) + " must lie in [0,1]");
}

[[noreturn]] void bad_outcome(const Model& m, const Outcome& y) {
    throw StructuralError(m.name() + ": outcome " + to_string(y) + " not in support");
}

}  // namespace

double Model::prob_A(const ParameterAtom& theta) const {
    double p = 0.0;
    for (const auto& y : support())
        if (in_A(y)) p += full_density(y, theta);
    return p;
}

double Model::density(const Outcome& y, const ParameterAtom& theta, CensoringMode mode) const {
    switch (mode) {
        case CensoringMode::Full:
            return full_density(y, theta);
        case CensoringMode::Truncated: {
            if (!in_A(y))
                throw InvalidQueryError(name() + ": truncated density undefined for " +
                                        to_string(y));
            const double pa = prob_A(theta);
            if (pa <= 0.0) return 0.0;
            return full_density(y, theta) / pa;
        }
        case CensoringMode::Censored:
            // The support enumerates A^c as lump outcomes whose full
            // densities already carry P_theta(A^c), so f^{AC} coincides
            // with f on this support.
            return full_density(y, theta);
    }
    throw StructuralError("density: unknown censoring mode");
}

Outcome Model::sample(const ParameterAtom& theta, Rng& rng) const {
    const auto sup = support();
    const double u = next_unit(rng);
    double cum = 0.0;
    for (const auto& y : sup) {
        cum += density(y, theta, CensoringMode::Censored);
        if (u < cum) return y;
    }
    return sup.back();
}

// ---------------------------------------------------------------------------
// Bernoulli

std::vector<Outcome> BernoulliModel::support() const {
    return {Outcome::observed(0), Outcome::observed(1)};
}

double BernoulliModel::full_density(const Outcome& y, const ParameterAtom& theta) const {
    if (!y.is_observed() || (y.v[0] != 0 && y.v[0] != 1) || y.v[1] != 0) bad_outcome(*this, y);
    const double p = theta[0];
    return y.v[0] == 1 ? p : 1.0 - p;
}

bool BernoulliModel::in_A(const Outcome& y) const { return y.is_observed(); }

std::vector<double> BernoulliModel::h(const Outcome& y) const {
    if (!y.is_observed()) throw InvalidQueryError("bernoulli: h undefined off A");
    return {static_cast<double>(y.v[0])};
}

std::vector<double> BernoulliModel::eta(const ParameterAtom& theta) const { return {theta[0]}; }

void BernoulliModel::validate_atom(const ParameterAtom& theta) const {
    if (theta.dim() != 1) throw StructuralError("bernoulli: theta must be (p)");
    check_prob(theta[0], "bernoulli p");
}

ParameterAtom BernoulliModel::random_atom(Rng& rng) const {
    return ParameterAtom{next_unit(rng)};
}

// ---------------------------------------------------------------------------
// StrataBinomial

StrataBinomialModel::StrataBinomialModel(int kappa) : kappa_(kappa) {
    if (kappa < 1) throw StructuralError("strata-binomial: kappa must be >= 1");
}

std::vector<Outcome> StrataBinomialModel::support() const {
    std::vector<Outcome> sup;
    sup.push_back(Outcome::non_response());  // kappa_obs = 0
    for (int k = 1; k <= kappa_; ++k)
        for (int x = 0; x <= k; ++x) sup.push_back(Outcome::observed(x, k));
    return sup;
}

double StrataBinomialModel::full_density(const Outcome& y, const ParameterAtom& theta) const {
    const double pi = theta[0], p = theta[1];
    if (y.kind == OutcomeKind::NonResponse) return binom_pmf(kappa_, 0, pi);
    if (!y.is_observed()) bad_outcome(*this, y);
    const int x = y.v[0], k = y.v[1];
    if (k < 1 || k > kappa_ || x < 0 || x > k) bad_outcome(*this, y);
    return binom_pmf(kappa_, k, pi) * binom_pmf(k, x, p);
}

bool StrataBinomialModel::in_A(const Outcome& y) const { return y.is_observed(); }

std::vector<double> StrataBinomialModel::h(const Outcome& y) const {
    if (!y.is_observed()) throw InvalidQueryError("strata-binomial: h undefined off A");
    return {static_cast<double>(y.v[0]) / static_cast<double>(y.v[1])};
}

std::vector<double> StrataBinomialModel::eta(const ParameterAtom& theta) const {
    return {theta[1]};
}

void StrataBinomialModel::validate_atom(const ParameterAtom& theta) const {
    if (theta.dim() != 2) throw StructuralError("strata-binomial: theta must be (pi, p)");
    check_prob(theta[0], "strata-binomial pi");
    check_prob(theta[1], "strata-binomial p");
}

ParameterAtom StrataBinomialModel::random_atom(Rng& rng) const {
    return ParameterAtom{next_unit(rng), next_unit(rng)};
}

// ---------------------------------------------------------------------------
// SurveyGeometric

SurveyGeometricModel::SurveyGeometricModel(int max_attempts, int n_categories)
    : K_(max_attempts), S_(n_categories) {
    if (K_ < 1 || S_ < 2) throw StructuralError("survey-geometric: need K >= 1 and S >= 2");
}

std::vector<Outcome> SurveyGeometricModel::support() const {
    std::vector<Outcome> sup;
    for (int s = 1; s <= S_; ++s)
        for (int k = 1; k <= K_; ++k) sup.push_back(Outcome::observed(s, k));
    sup.push_back(Outcome::non_response());
    return sup;  // K*S + 1 outcomes
}

double SurveyGeometricModel::full_density(const Outcome& y, const ParameterAtom& theta) const {
    const double pi = theta[0];
    if (y.kind == OutcomeKind::NonResponse) return std::pow(1.0 - pi, K_);
    if (!y.is_observed()) bad_outcome(*this, y);
    const int s = y.v[0], k = y.v[1];
    if (s < 1 || s > S_ || k < 1 || k > K_) bad_outcome(*this, y);
    return std::pow(1.0 - pi, k - 1) * pi * theta[s];
}

bool SurveyGeometricModel::in_A(const Outcome& y) const { return y.is_observed(); }

std::vector<double> SurveyGeometricModel::h(const Outcome& y) const {
    if (!y.is_observed()) throw InvalidQueryError("survey-geometric: h undefined off A");
    std::vector<double> e(static_cast<std::size_t>(S_), 0.0);
    e[static_cast<std::size_t>(y.v[0] - 1)] = 1.0;
    return e;
}

std::vector<double> SurveyGeometricModel::eta(const ParameterAtom& theta) const {
    return std::vector<double>(theta.coords.begin() + 1, theta.coords.end());
}

void SurveyGeometricModel::validate_atom(const ParameterAtom& theta) const {
    if (theta.dim() != static_cast<std::size_t>(S_) + 1)
        throw StructuralError("survey-geometric: theta must be (pi, p_1..p_S)");
    check_prob(theta[0], "survey-geometric pi");
    double sum = 0.0;
    for (int s = 1; s <= S_; ++s) {
        check_prob(theta[s], "survey-geometric p_s");
        sum += theta[s];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw StructuralError("survey-geometric: category probabilities must sum to 1");
}

ParameterAtom SurveyGeometricModel::random_atom(Rng& rng) const {
    std::vector<double> c;
    c.push_back(next_unit(rng));
    auto p = dirichlet_uniform(static_cast<std::size_t>(S_), rng);
    // Pin the last category so the simplex constraint holds exactly.
    double head = 0.0;
    for (std::size_t s = 0; s + 1 < p.size(); ++s) head += p[s];
    p.back() = 1.0 - head;
    c.insert(c.end(), p.begin(), p.end());
    return ParameterAtom(std::move(c));
}

// ---------------------------------------------------------------------------
// PoissonBinomial

PoissonBinomialModel::PoissonBinomialModel(double lambda_max) : lambda_max_(lambda_max) {
    if (!(lambda_max > 0.0)) throw StructuralError("poisson-binomial: lambda_max must be > 0");
    // kappa_cap: smallest m with P(K > m) < 1e-9 at lambda_max.
    double cdf = 0.0;
    int m = -1;
    do {
        ++m;
        cdf += poisson_pmf(m, lambda_max_);
    } while (1.0 - cdf >= 1e-9 && m < 10000);
    kappa_cap_ = m;
}

std::vector<Outcome> PoissonBinomialModel::support() const {
    std::vector<Outcome> sup;
    sup.push_back(Outcome::non_response());  // kappa_obs = 0
    for (int k = 1; k <= kappa_cap_; ++k)
        for (int x = 0; x <= k; ++x) sup.push_back(Outcome::observed(x, k));
    sup.push_back(Outcome::overflow());
    return sup;
}

double PoissonBinomialModel::full_density(const Outcome& y, const ParameterAtom& theta) const {
    const double lambda = theta[0], p = theta[1];
    if (y.kind == OutcomeKind::NonResponse) return std::exp(-lambda);
    if (y.kind == OutcomeKind::Overflow) {
        double cdf = 0.0;
        for (int k = 0; k <= kappa_cap_; ++k) cdf += poisson_pmf(k, lambda);
        return std::max(0.0, 1.0 - cdf);
    }
    const int x = y.v[0], k = y.v[1];
    if (k < 1 || k > kappa_cap_ || x < 0 || x > k) bad_outcome(*this, y);
    return poisson_pmf(k, lambda) * binom_pmf(k, x, p);
}

bool PoissonBinomialModel::in_A(const Outcome& y) const { return y.is_observed(); }

std::vector<double> PoissonBinomialModel::h(const Outcome& y) const {
    if (!y.is_observed()) throw InvalidQueryError("poisson-binomial: h undefined off A");
    return {static_cast<double>(y.v[0]) / static_cast<double>(y.v[1])};
}

std::vector<double> PoissonBinomialModel::eta(const ParameterAtom& theta) const {
    return {theta[1]};
}

void PoissonBinomialModel::validate_atom(const ParameterAtom& theta) const {
    if (theta.dim() != 2) throw StructuralError("poisson-binomial: theta must be (lambda, p)");
    if (!(theta[0] > 0.0 && theta[0] <= lambda_max_))
        throw StructuralError("poisson-binomial: lambda must lie in (0, lambda_max]");
    check_prob(theta[1], "poisson-binomial p");
}

ParameterAtom PoissonBinomialModel::random_atom(Rng& rng) const {
    const double lambda = lambda_max_ * std::max(next_unit(rng), 1e-6);
    return ParameterAtom{lambda, next_unit(rng)};
}

// ---------------------------------------------------------------------------

LikelihoodMatrix build_likelihood_matrix(const Model& model, const ObservationSet& obs,
                                         const ParameterGrid& grid, CensoringMode mode) {
    LikelihoodMatrix l(obs.n_rows(), grid.size(), mode);
    for (std::size_t j = 0; j < grid.size(); ++j) model.validate_atom(grid.atom(j));
    for (std::size_t i = 0; i < obs.n_rows(); ++i) {
        const Outcome& y = obs.entries()[i].first;
        for (std::size_t j = 0; j < grid.size(); ++j)
            l.at(i, j) = model.density(y, grid.atom(j), mode);
    }
    l.validate();
    return l;
}

double delta_min(const Model& model, const ParameterGrid& grid) {
    double d = 1.0;
    for (const auto& theta : grid.atoms()) d = std::min(d, model.prob_A(theta));
    return d;
}

}  // namespace gmix
