#include "gmix/solver.hpp"

#include <cmath>

#include "gmix/rng.hpp"

namespace gmix {

namespace {

// Gradient ratios r_j = (1/n) sum_i count_i L[i][j] / f_i. Throws when an
// observed row has zero marginal, naming the outcome.
std::vector<double> gradient_ratios(const ObservationSet& obs, const LikelihoodMatrix& l,
                                    const std::vector<double>& f) {
    const double n = static_cast<double>(obs.n());
    std::vector<double> r(l.cols(), 0.0);
    for (std::size_t i = 0; i < l.rows(); ++i) {
        if (f[i] <= 0.0)
            throw StructuralError("em: zero marginal for observed outcome " +
                                  to_string(obs.entries()[i].first));
        const double scale = static_cast<double>(obs.entries()[i].second) / (f[i] * n);
        const double* row = l.row(i);
        for (std::size_t j = 0; j < l.cols(); ++j) r[j] += scale * row[j];
    }
    return r;
}

std::vector<double> marginals_raw(const std::vector<double>& w, const LikelihoodMatrix& l) {
    std::vector<double> f(l.rows(), 0.0);
    for (std::size_t i = 0; i < l.rows(); ++i) {
        const double* row = l.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < l.cols(); ++j) acc += w[j] * row[j];
        f[i] = acc;
    }
    return f;
}

double loglik_raw(const std::vector<double>& f, const ObservationSet& obs) {
    double ll = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] <= 0.0) return kMinusInfinity;
        ll += static_cast<double>(obs.entries()[i].second) * std::log(f[i]);
    }
    return ll;
}

}  // namespace

void SolverConfig::validate() const {
    if (max_iters < 1) throw StructuralError("SolverConfig: max_iters must be >= 1");
    if (!(rel_tol >= 0.0) || !(kkt_tol > 0.0))
        throw StructuralError("SolverConfig: tolerances must be nonnegative (kkt_tol > 0)");
    if (n_starts < 1) throw StructuralError("SolverConfig: n_starts must be >= 1");
}

MixingDistribution em_step(const MixingDistribution& g, const ObservationSet& obs,
                           const LikelihoodMatrix& l) {
    if (g.size() != l.cols()) throw StructuralError("em_step: grid/likelihood mismatch");
    if (obs.n_rows() != l.rows()) throw StructuralError("em_step: observation/likelihood mismatch");
    const auto f = marginals_raw(g.weights(), l);
    const auto r = gradient_ratios(obs, l, f);
    std::vector<double> w(g.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        w[j] = g.weight(j) * r[j];
        sum += w[j];
    }
    for (double& x : w) x /= sum;
    return MixingDistribution(g.grid_ptr(), std::move(w));
}

double kkt_gap(const MixingDistribution& g, const ObservationSet& obs,
               const LikelihoodMatrix& l) {
    const auto f = marginals_raw(g.weights(), l);
    const auto r = gradient_ratios(obs, l, f);
    double gap = -1.0;
    for (double v : r) gap = std::max(gap, v - 1.0);
    return gap;
}

FitResult fit_from(const ObservationSet& obs, const LikelihoodMatrix& l,
                   const SolverConfig& config, MixingDistribution init) {
    config.validate();
    if (init.size() != l.cols()) throw StructuralError("fit: grid/likelihood mismatch");
    if (obs.n_rows() != l.rows()) throw StructuralError("fit: observation/likelihood mismatch");
    l.validate();

    std::vector<double> w = init.weights();
    std::vector<std::string> warnings;
    auto f = marginals_raw(w, l);
    double ll = loglik_raw(f, obs);
    std::vector<double> trace{ll};

    double gap = 0.0;
    int iters = 0;
    for (; iters < config.max_iters; ++iters) {
        const auto r = gradient_ratios(obs, l, f);
        gap = -1.0;
        for (double v : r) gap = std::max(gap, v - 1.0);
        if (gap <= config.kkt_tol) break;

        double sum = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            w[j] *= r[j];
            sum += w[j];
        }
        if (std::abs(sum - 1.0) > 1e-10 && warnings.empty())
            warnings.push_back("weight normalization drift " + std::to_string(sum - 1.0) +
                               " at iteration " + std::to_string(iters + 1));
        for (double& x : w) x /= sum;

        f = marginals_raw(w, l);
        const double ll_new = loglik_raw(f, obs);
        trace.push_back(ll_new);
        // rel_tol = 0 disables the relative-change rule: near a flat optimum
        // the log-likelihood step underflows double precision while the
        // weights (and the KKT gap) still improve, so KKT-driven runs must
        // not stop on a constant log-likelihood.
        if (config.rel_tol > 0.0 && std::abs(ll_new - ll) <= config.rel_tol * std::abs(ll)) {
            ll = ll_new;
            ++iters;
            break;
        }
        ll = ll_new;
    }

    MixingDistribution g_hat(init.grid_ptr(), w);
    gap = kkt_gap(g_hat, obs, l);
    FitResult res{std::move(g_hat), std::move(trace), marginals_raw(w, l),
                  gap,              gap <= config.kkt_tol, iters,
                  std::move(warnings)};
    return res;
}

FitResult fit(const ObservationSet& obs, const LikelihoodMatrix& l, const SolverConfig& config,
              const GridPtr& grid) {
    config.validate();
    MixingDistribution init = MixingDistribution::uniform(grid);
    if (config.init == SolverConfig::Init::DirichletRandom) {
        Rng rng(config.seed);
        init = MixingDistribution(grid, dirichlet_uniform(grid->size(), rng));
    }
    return fit_from(obs, l, config, std::move(init));
}

std::vector<FitResult> multi_start_fit(const ObservationSet& obs, const LikelihoodMatrix& l,
                                       const SolverConfig& config, const GridPtr& grid) {
    config.validate();
    if (config.n_starts < 2)
        throw StructuralError("multi_start_fit: n_starts must be >= 2");
    std::vector<FitResult> results;
    results.reserve(static_cast<std::size_t>(config.n_starts));
    for (int s = 0; s < config.n_starts; ++s) {
        Rng rng(split_seed(config.seed, static_cast<std::uint64_t>(s)));
        MixingDistribution init(grid, dirichlet_uniform(grid->size(), rng));
        results.push_back(fit_from(obs, l, config, std::move(init)));
    }
    return results;
}

}  // namespace gmix
