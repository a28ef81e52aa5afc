#pragma once

// Seeded generators for gluing data and global gauge changes.

#include <random>

#include "helpers.hpp"
#include "loopgr/p1bundles.hpp"

namespace testing {

// Up to `max_points` distinct integer points, each with a random loop of pole
// bound <= N (or a random positive loop).
inline ModificationDatum random_datum(const Ring& ring, std::size_t n, std::size_t max_points, int N,
                                      std::uint64_t seed, bool positive = false)
{
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 11);
    const std::size_t count = 1 + rng() % max_points;
    std::vector<MarkedPoint> points;
    std::vector<LoopMatrix> loops;
    std::vector<long> used;
    while (points.size() < count) {
        const long r = static_cast<long>(rng() % 7) - 3;
        if (std::find(used.begin(), used.end(), r) != used.end()) continue;
        used.push_back(r);
        points.push_back({Scalar::from_int(ring, r)});
        const std::uint64_t s = rng();
        loops.push_back(positive ? random_positive(ring, n, s) : random_loop(ring, n, N, s).loop);
    }
    return ModificationDatum(std::move(points), std::move(loops));
}

inline RationalFunction rconst(const Ring& ring, long c)
{
    return RationalFunction(Polynomial::constant(Scalar::from_int(ring, c)));
}

// A product of elementary and diagonal gauge factors whose poles and
// determinant zeros sit at the marked points of b or at infinity.
inline std::vector<std::vector<RationalFunction>> random_gauge(const ModificationDatum& b, std::uint64_t seed)
{
    const Ring& ring = b.ring();
    const std::size_t n = b.rank();
    std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ULL + 5);
    auto identity = [&] {
        std::vector<std::vector<RationalFunction>> g(n, std::vector<RationalFunction>(n, rconst(ring, 0)));
        for (std::size_t i = 0; i < n; ++i) g[i][i] = rconst(ring, 1);
        return g;
    };
    auto product = [&](const auto& a, const auto& c) {
        auto r = identity();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                RationalFunction acc = rconst(ring, 0);
                for (std::size_t k = 0; k < n; ++k) acc = acc + a[i][k] * c[k][j];
                r[i][j] = acc;
            }
        }
        return r;
    };
    auto g = identity();
    for (int step = 0; step < 3; ++step) {
        auto f = identity();
        const long c = 1 + static_cast<long>(rng() % 3);
        const int kind = static_cast<int>(rng() % 3);
        const bool has_point = b.size() > 0;
        const Scalar r = has_point ? b.points()[rng() % b.size()].r : Scalar::zero(ring);
        const RationalFunction lin(Polynomial::linear(r));
        if (kind == 0 && n > 1) {
            // E_ij(c t^k)
            const std::size_t i = rng() % n;
            const std::size_t j = (i + 1 + rng() % (n - 1)) % n;
            f[i][j] = RationalFunction(Polynomial::monomial(Scalar::from_int(ring, c), static_cast<int>(rng() % 3)));
        } else if (kind == 1 && n > 1 && has_point) {
            // E_ij(c / (t - r))
            const std::size_t i = rng() % n;
            const std::size_t j = (i + 1 + rng() % (n - 1)) % n;
            f[i][j] = rconst(ring, c) * lin.inverse();
        } else if (has_point) {
            const std::size_t i = rng() % n;
            f[i][i] = rng() % 2 ? lin : lin.inverse();
        } else {
            f[0][0] = rconst(ring, c);
        }
        g = product(g, f);
    }
    return g;
}

} // namespace testing
