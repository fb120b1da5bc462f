#include "gmix/types.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gmix {

std::string to_string(CensoringMode mode) {
    switch (mode) {
        case CensoringMode::Full: return "full";
        case CensoringMode::Truncated: return "truncated";
        case CensoringMode::Censored: return "censored";
    }
    return "?";
}

std::string to_string(const Outcome& y) {
    switch (y.kind) {
        case OutcomeKind::NonResponse: return "NonResponse";
        case OutcomeKind::Overflow: return "Overflow";
        case OutcomeKind::Observed: {
            std::ostringstream os;
            os << "(" << y.v[0] << "," << y.v[1] << ")";
            return os.str();
        }
    }
    return "?";
}

ParameterGrid::ParameterGrid(std::vector<ParameterAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw StructuralError("ParameterGrid: empty grid");
    auto sorted = atoms_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw StructuralError("ParameterGrid: duplicate atoms");
    const std::size_t d = atoms_.front().dim();
    for (const auto& a : atoms_)
        if (a.dim() != d) throw StructuralError("ParameterGrid: inconsistent atom dimension");
}

MixingDistribution::MixingDistribution(GridPtr grid, std::vector<double> weights)
    : grid_(std::move(grid)), weights_(std::move(weights)) {
    if (!grid_) throw StructuralError("MixingDistribution: null grid");
    if (weights_.size() != grid_->size())
        throw StructuralError("MixingDistribution: weight/grid length mismatch");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw StructuralError("MixingDistribution: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw StructuralError("MixingDistribution: weights sum to " + std::to_string(sum));
}

MixingDistribution MixingDistribution::uniform(GridPtr grid) {
    if (!grid) throw StructuralError("MixingDistribution::uniform: null grid");
    std::vector<double> w(grid->size(), 1.0 / static_cast<double>(grid->size()));
    return MixingDistribution(std::move(grid), std::move(w));
}

ObservationSet::ObservationSet(std::vector<Entry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw StructuralError("ObservationSet: no entries");
    std::map<Outcome, int> seen;
    for (const auto& [y, c] : entries_) {
        if (c < 1) throw StructuralError("ObservationSet: count < 1 for " + to_string(y));
        if (++seen[y] > 1) throw StructuralError("ObservationSet: duplicate outcome " + to_string(y));
        n_ += c;
    }
}

ObservationSet ObservationSet::from_draws(const std::vector<Outcome>& draws) {
    std::map<Outcome, long> counts;
    for (const auto& y : draws) ++counts[y];
    std::vector<Entry> entries(counts.begin(), counts.end());
    return ObservationSet(std::move(entries));
}

LikelihoodMatrix::LikelihoodMatrix(std::size_t rows, std::size_t cols, CensoringMode mode)
    : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw StructuralError("LikelihoodMatrix: empty dimensions");
}

void LikelihoodMatrix::validate() const {
    for (std::size_t i = 0; i < rows_; ++i) {
        bool any_positive = false;
        for (std::size_t j = 0; j < cols_; ++j) {
            const double v = at(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw StructuralError("LikelihoodMatrix: invalid entry at row " + std::to_string(i));
            any_positive = any_positive || v > 0.0;
        }
        if (!any_positive)
            throw StructuralError("LikelihoodMatrix: row " + std::to_string(i) +
                                  " has no positive entry (grid cannot explain this outcome)");
    }
}

}  // namespace gmix
