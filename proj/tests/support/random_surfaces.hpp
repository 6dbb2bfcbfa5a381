#ifndef PGFS_TESTS_RANDOM_SURFACES_HPP
#define PGFS_TESTS_RANDOM_SURFACES_HPP

// Deterministic generators of admissible free-form surfaces for the oracle
// and relation suites.  Surfaces are scaled so |f g'| stays safely inside
// the cone: (f g')^2 <= 0.9 at every probed node with margin to spare.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pgfs/surface.hpp"

namespace pgfs_tests {

inline pgfs::C2Fn random_factor(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> small(-0.6, 0.6);
    std::uniform_real_distribution<double> pos(0.5, 1.5);
    switch (static_cast<int>(u01(rng) * 6)) {
        case 0:
            return pgfs::C2Fn::exponential(pos(rng), small(rng));
        case 1:
            return pgfs::C2Fn::tanh_fn(pos(rng), pos(rng), small(rng));
        case 2:
            return pgfs::C2Fn::quadratic(small(rng) * 0.5, small(rng), pos(rng) + 1.0);
        case 3:
            // base m v + b stays positive for |v| <= 3.5 since b >= 5
            return pgfs::C2Fn::power(small(rng), 5.0 + u01(rng), 1.0 + small(rng));
        case 4:
            return pgfs::C2Fn::product(pgfs::C2Fn::exponential(pos(rng), small(rng) * 0.5),
                                       pgfs::C2Fn::quadratic(small(rng) * 0.3,
                                                             small(rng), pos(rng) + 1.0));
        default:
            return pgfs::C2Fn::sum({pgfs::C2Fn::tanh_fn(pos(rng) * 0.5, pos(rng), small(rng)),
                                    pgfs::C2Fn::linear(small(rng), pos(rng))});
    }
}

/// A random surface on [-1,1]^2 with |f g'| <= 0.9 everywhere (probed on a
/// fine grid, then scaled with margin).
inline pgfs::FactorableSurface random_admissible_surface(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ua(-1.5, 1.5);
    const pgfs::DomainRect dom{-1.0, 1.0, -1.0, 1.0};
    const pgfs::C2Fn f = random_factor(rng);
    const pgfs::C2Fn g = random_factor(rng);
    const double a = ua(rng);

    double max_fg1 = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double x = -1.0 + 0.05 * i;
        for (int j = 0; j <= 40; ++j) {
            const double z = -1.0 + 0.05 * j;
            max_fg1 = std::max(max_fg1,
                               std::fabs(f.eval(x) * g.d1(z + a * x)));
        }
    }
    const double sigma = max_fg1 > 0.9 ? 0.9 / max_fg1 : 1.0;
    return pgfs::FactorableSurface(pgfs::C2Fn::scale(sigma, f), g, a, dom);
}

/// A random surface whose Gaussian curvature is bounded away from zero on
/// [-1,1]^2: f exponential, g concave quadratic kept positive, so
/// f'^2 g'^2 - f f'' g g'' = k^2 f^2 (g'^2 - g g'') with g g'' < 0 < g'^2 - g g''.
inline pgfs::FactorableSurface random_nonflat_surface(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uc(0.6, 1.2);
    std::uniform_real_distribution<double> uk(0.3, 0.8);
    std::uniform_real_distribution<double> up(-0.2, -0.1);
    std::uniform_real_distribution<double> uq(-0.2, 0.2);
    std::uniform_real_distribution<double> ur(1.5, 2.0);
    std::uniform_real_distribution<double> ua(0.3, 0.8);
    const pgfs::DomainRect dom{-1.0, 1.0, -1.0, 1.0};
    const pgfs::C2Fn f = pgfs::C2Fn::exponential(uc(rng), uk(rng));
    const pgfs::C2Fn g = pgfs::C2Fn::quadratic(up(rng), uq(rng), ur(rng));
    const double a = ua(rng);

    double max_fg1 = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double x = -1.0 + 0.05 * i;
        for (int j = 0; j <= 40; ++j) {
            const double z = -1.0 + 0.05 * j;
            max_fg1 = std::max(max_fg1,
                               std::fabs(f.eval(x) * g.d1(z + a * x)));
        }
    }
    const double sigma = max_fg1 > 0.9 ? 0.9 / max_fg1 : 1.0;
    return pgfs::FactorableSurface(pgfs::C2Fn::scale(sigma, f), g, a, dom);
}

} // namespace pgfs_tests

#endif // PGFS_TESTS_RANDOM_SURFACES_HPP
