#ifndef GMIX_RNG_HPP
#define GMIX_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace gmix {

using Rng = std::mt19937_64;

/// splitmix64 step; used to derive independent per-replication and
/// per-start seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Seed-splitting contract:
/// seed_i = splitmix64(master ^ (0x9E3779B97F4A7C15 * (index + 1))).
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

/// Uniform draw in [0, 1) with 53 random bits. Avoids
/// std::uniform_real_distribution so the stream is identical across
/// standard library implementations.
inline double next_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Dirichlet(1,...,1) draw of dimension k (uniform on the simplex).
inline std::vector<double> dirichlet_uniform(std::size_t k, Rng& rng) {
    std::vector<double> w(k);
    double sum = 0.0;
    for (auto& x : w) {
        double u = next_unit(rng);
        x = -std::log1p(-u);  // Exp(1)
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return w;
}

}  // namespace gmix

#endif  // GMIX_RNG_HPP
