#include "gmix/estimators.hpp"

#include <cmath>

namespace gmix {

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::GMLE: return "gmle";
        case EstimatorKind::Naive: return "naive";
        case EstimatorKind::Weighted: return "weighted";
    }
    return "?";
}

EstimateReport eta_gmle(const FitResult& fit, const Model& model) {
    const auto& g = fit.g_hat;
    std::vector<double> eta(model.eta_dim(), 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        const auto ej = model.eta(g.grid().atom(j));
        for (std::size_t d = 0; d < eta.size(); ++d) eta[d] += g.weight(j) * ej[d];
    }
    EstimateReport rep{std::move(eta), EstimatorKind::GMLE, {}};
    rep.diagnostics["kkt_gap"] = fit.kkt_gap;
    rep.diagnostics["delta_min"] = delta_min(model, g.grid());
    return rep;
}

EstimateReport eta_naive(const ObservationSet& obs, const Model& model) {
    std::vector<double> sum(model.eta_dim(), 0.0);
    long m = 0;
    for (const auto& [y, c] : obs.entries()) {
        if (!model.in_A(y)) continue;
        const auto hy = model.h(y);
        for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += static_cast<double>(c) * hy[d];
        m += c;
    }
    if (m == 0) throw InvalidQueryError("eta_naive: no respondents, estimator undefined");
    for (double& v : sum) v /= static_cast<double>(m);
    EstimateReport rep{std::move(sum), EstimatorKind::Naive, {}};
    rep.diagnostics["n_respondents"] = static_cast<double>(m);
    return rep;
}

EstimateReport eta_weighted(const std::vector<std::pair<Outcome, double>>& weighted_obs,
                            const FitResult& fit, const Model& model) {
    if (weighted_obs.empty()) throw StructuralError("eta_weighted: no observations");
    double gamma_sum = 0.0;
    for (const auto& [y, gamma] : weighted_obs) {
        if (!(gamma >= 0.0)) throw StructuralError("eta_weighted: negative weight");
        gamma_sum += gamma;
    }
    if (std::abs(gamma_sum - 1.0) > 1e-10)
        throw StructuralError("eta_weighted: weights sum to " + std::to_string(gamma_sum));

    const std::size_t dim = model.eta_dim();
    const double n = static_cast<double>(weighted_obs.size());
    const auto eta_hat = eta_gmle(fit, model).eta_hat;

    std::vector<double> m_hat(dim, 0.0);   // respondent term sum gamma_i h(Y_i)
    std::vector<double> h_mean(dim, 0.0);  // (1/n) sum over respondents of h(Y_i)
    double gamma_nr = 0.0;
    long n_resp = 0;
    for (const auto& [y, gamma] : weighted_obs) {
        if (model.in_A(y)) {
            const auto hy = model.h(y);
            for (std::size_t d = 0; d < dim; ++d) {
                m_hat[d] += gamma * hy[d];
                h_mean[d] += hy[d] / n;
            }
            ++n_resp;
        } else {
            gamma_nr += gamma;
        }
    }

    EstimateReport rep{{}, EstimatorKind::Weighted, {}};
    rep.diagnostics["n_respondents"] = static_cast<double>(n_resp);
    rep.diagnostics["kkt_gap"] = fit.kkt_gap;

    const long n_nonresp = static_cast<long>(weighted_obs.size()) - n_resp;
    if (n_nonresp > 0) {
        // E-hat = eta_gmle - (1/n) sum_resp h(Y_i) estimates the pooled
        // (1/n)-weighted non-respondent contribution; spread across the
        // non-respondent weight mass at its per-unit rate n/(n - m) so
        // that equal weights reproduce eta_gmle exactly.
        const double rate = n / static_cast<double>(n_nonresp);
        for (std::size_t d = 0; d < dim; ++d) {
            const double e_hat = eta_hat[d] - h_mean[d];
            m_hat[d] += e_hat * rate * gamma_nr;
            if (d == 0) rep.diagnostics["e_hat"] = e_hat;
        }
    }
    rep.eta_hat = std::move(m_hat);
    return rep;
}

std::vector<double> eta_via_support(const MixingDistribution& g, const Model& model) {
    const auto sup = model.support();
    std::vector<double> eta(model.eta_dim(), 0.0);
    for (const auto& y : sup) {
        if (!model.in_A(y)) continue;
        double f_trunc = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j)
            f_trunc += g.weight(j) * model.density(y, g.grid().atom(j), CensoringMode::Truncated);
        const auto hy = model.h(y);
        for (std::size_t d = 0; d < eta.size(); ++d) eta[d] += hy[d] * f_trunc;
    }
    return eta;
}

}  // namespace gmix
