// Test-only brute-force oracles, independent of the EM implementation path.
#ifndef GMIX_TESTS_ORACLE_HPP
#define GMIX_TESTS_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace gmix::oracle {

inline double loglik_at(const std::vector<std::vector<double>>& l,
                        const std::vector<long>& counts, const std::vector<double>& w) {
    double ll = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        double f = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) f += w[j] * l[i][j];
        if (f <= 0.0) return -std::numeric_limits<double>::infinity();
        ll += static_cast<double>(counts[i]) * std::log(f);
    }
    return ll;
}

/// Exhaustive search over the weight simplex on a uniform lattice with the
/// given step, for 1 to 3 atoms. Returns the best log-likelihood found.
inline double simplex_grid_search(const std::vector<std::vector<double>>& l,
                                  const std::vector<long>& counts, double step) {
    const std::size_t k = l.front().size();
    const long m = std::lround(1.0 / step);
    double best = -std::numeric_limits<double>::infinity();
    if (k == 1) return loglik_at(l, counts, {1.0});
    if (k == 2) {
        for (long a = 0; a <= m; ++a) {
            const double w0 = static_cast<double>(a) / static_cast<double>(m);
            best = std::max(best, loglik_at(l, counts, {w0, 1.0 - w0}));
        }
        return best;
    }
    for (long a = 0; a <= m; ++a)
        for (long b = 0; b <= m - a; ++b) {
            const double w0 = static_cast<double>(a) / static_cast<double>(m);
            const double w1 = static_cast<double>(b) / static_cast<double>(m);
            best = std::max(best, loglik_at(l, counts, {w0, w1, 1.0 - w0 - w1}));
        }
    return best;
}

}  // namespace gmix::oracle

#endif  // GMIX_TESTS_ORACLE_HPP
