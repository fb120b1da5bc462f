#include "gmix/grid.hpp"

namespace gmix {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) throw StructuralError("linspace: need at least one point");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

ParameterGrid product_grid(const std::vector<std::vector<double>>& axes) {
    if (axes.empty()) throw StructuralError("product_grid: no axes");
    std::size_t total = 1;
    for (const auto& ax : axes) {
        if (ax.empty()) throw StructuralError("product_grid: empty axis");
        total *= ax.size();
    }
    std::vector<ParameterAtom> atoms;
    atoms.reserve(total);
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<double> coords(axes.size());
        for (std::size_t d = 0; d < axes.size(); ++d) coords[d] = axes[d][idx[d]];
        atoms.emplace_back(std::move(coords));
        for (std::size_t d = axes.size(); d-- > 0;) {
            if (++idx[d] < axes[d].size()) break;
            idx[d] = 0;
        }
    }
    return ParameterGrid(std::move(atoms));
}

namespace {

void compositions(std::size_t dim, std::size_t remaining, std::size_t resolution,
                  std::vector<std::size_t>& cur, std::vector<std::vector<double>>& out) {
    if (cur.size() + 1 == dim) {
        std::vector<double> p(dim);
        double head = 0.0;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            p[i] = static_cast<double>(cur[i]) / static_cast<double>(resolution);
            head += p[i];
        }
        p.back() = 1.0 - head;
        out.push_back(std::move(p));
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        cur.push_back(k);
        compositions(dim, remaining - k, resolution, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<double>> simplex_lattice(std::size_t dim, std::size_t resolution) {
    if (dim < 1 || resolution < 1) throw StructuralError("simplex_lattice: bad arguments");
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> cur;
    compositions(dim, resolution, resolution, cur, out);
    return out;
}

ParameterGrid survey_grid(const std::vector<double>& pi_axis, std::size_t n_categories,
                          std::size_t simplex_resolution) {
    const auto lattice = simplex_lattice(n_categories, simplex_resolution);
    std::vector<ParameterAtom> atoms;
    atoms.reserve(pi_axis.size() * lattice.size());
    for (double pi : pi_axis)
        for (const auto& p : lattice) {
            std::vector<double> coords;
            coords.reserve(1 + p.size());
            coords.push_back(pi);
            coords.insert(coords.end(), p.begin(), p.end());
            atoms.emplace_back(std::move(coords));
        }
    return ParameterGrid(std::move(atoms));
}

}  // namespace gmix
