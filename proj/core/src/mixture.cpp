#include "gmix/mixture.hpp"

#include <cmath>

namespace gmix {

namespace {

void check_dims(const MixingDistribution& g, const LikelihoodMatrix& l) {
    if (g.size() != l.cols())
        throw StructuralError("mixture: grid size " + std::to_string(g.size()) +
                              " != likelihood columns " + std::to_string(l.cols()));
}

}  // namespace

std::vector<double> marginal_density(const MixingDistribution& g, const LikelihoodMatrix& l) {
    check_dims(g, l);
    const auto& w = g.weights();
    std::vector<double> out(l.rows(), 0.0);
    for (std::size_t i = 0; i < l.rows(); ++i) {
        const double* row = l.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < l.cols(); ++j) acc += w[j] * row[j];
        out[i] = acc;
    }
    return out;
}

double log_likelihood(const MixingDistribution& g, const ObservationSet& obs,
                      const LikelihoodMatrix& l) {
    check_dims(g, l);
    if (obs.n_rows() != l.rows())
        throw StructuralError("mixture: observation rows != likelihood rows");
    const auto f = marginal_density(g, l);
    double ll = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] <= 0.0) return kMinusInfinity;
        ll += static_cast<double>(obs.entries()[i].second) * std::log(f[i]);
    }
    return ll;
}

std::vector<double> posterior_weights(const MixingDistribution& g, const LikelihoodMatrix& l,
                                      std::size_t row) {
    check_dims(g, l);
    if (row >= l.rows()) throw StructuralError("posterior_weights: row out of range");
    const auto& w = g.weights();
    const double* lr = l.row(row);
    double f = 0.0;
    for (std::size_t j = 0; j < l.cols(); ++j) f += w[j] * lr[j];
    if (f <= 0.0)
        throw InvalidQueryError("posterior_weights: zero marginal at row " + std::to_string(row));
    std::vector<double> post(l.cols());
    for (std::size_t j = 0; j < l.cols(); ++j) post[j] = w[j] * lr[j] / f;
    return post;
}

}  // namespace gmix
