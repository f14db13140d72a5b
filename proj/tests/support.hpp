#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <bit>

#include "vlt/geometry.hpp"
#include "vlt/grid.hpp"
#include "vlt/metrics.hpp"
#include "vlt/phantom.hpp"
#include "vlt/transform.hpp"

namespace vlt::test {

inline const VLineGeometry& default_geometry() {
    static const VLineGeometry g(Direction(1.0, 0.0), Direction(0.0, 1.0));
    return g;
}

/// Grid whose data disc is the smallest one the geometry allows.
template <class Geometry>
Grid2D grid_for(const Geometry& geom, int n, double r1 = 1.0) {
    return Grid2D::centered(n, r1, geom.min_r2(r1));
}

inline Grid2D disc_grid(int n, double r1 = 1.0) { return Grid2D::centered(n, r1, std::sqrt(2.0) * r1); }

/// Largest samplewise difference, normalized by the larger of the two max-norms.
inline double max_rel_diff(const ScalarField& a, const ScalarField& b) {
    double diff = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
    const double scale = std::max(a.max_abs(), b.max_abs());
    return scale > 0.0 ? diff / scale : diff;
}

inline bool bit_identical(const ScalarField& a, const ScalarField& b) {
    if (a.values().size() != b.values().size()) return false;
    for (std::size_t k = 0; k < a.values().size(); ++k)
        if (std::bit_cast<std::uint64_t>(a[k]) != std::bit_cast<std::uint64_t>(b[k])) return false;
    return true;
}

/// Bump with random center and the largest scale that keeps it inside D1.
inline Bump random_bump(std::mt19937_64& rng, double r1 = 1.0) {
    std::uniform_real_distribution<double> radius(0.0, 0.35 * r1), angle(0.0, 2.0 * std::acos(-1.0)),
        amp(0.5, 2.0);
    const double r = radius(rng), a = angle(rng);
    const Vec2 c{r * std::cos(a), r * std::sin(a)};
    std::uniform_real_distribution<double> scale(0.5 * (r1 - r), r1 - r);
    return Bump{c, scale(rng) * (1.0 - 1e-9), amp(rng)};
}

}  // namespace vlt::test

#include <algorithm>
#include <numbers>

#include "vlt/star.hpp"

namespace vlt::test {

/// Brute-force pairing test: every ray has an antipodal partner carrying the
/// opposite weight. Each direction has at most one antipode, so a greedy
/// search finds the pairing when one exists.
inline bool symmetric_by_pairing(const StarGeometry& sg) {
    const int m = sg.size();
    if (m % 2 != 0) return false;
    double wscale = 0.0;
    for (double c : sg.weights()) wscale = std::max(wscale, std::abs(c));
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (int i = 0; i < m; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        bool found = false;
        for (int j = i + 1; j < m && !found; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const Vec2 s = sg.gammas()[static_cast<std::size_t>(i)].vec() + sg.gammas()[static_cast<std::size_t>(j)].vec();
            const double w = sg.weights()[static_cast<std::size_t>(i)] + sg.weights()[static_cast<std::size_t>(j)];
            if (norm(s) < 1e-9 && std::abs(w) < 1e-9 * wscale) {
                used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Random star geometries with m in {2, 3, 4, 6}: generic ones, symmetric
/// pairings, and near misses whose rays pair up antipodally but where one
/// pair has equal weights or mismatched magnitudes. Rays are shuffled.
inline std::vector<StarGeometry> star_suite(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi), weight(0.3, 2.0);
    std::bernoulli_distribution coin(0.5);
    const int sizes[] = {2, 3, 4, 6};
    std::vector<StarGeometry> out;
    for (int n = 0; n < count; ++n) {
        const int m = sizes[n % 4];
        const int kind = m % 2 == 0 ? (n / 4) % 4 : 0;  // 0 generic, 1 symmetric, 2 sign miss, 3 magnitude miss
        std::vector<std::pair<Direction, double>> rays;
        if (kind == 0) {
            for (int i = 0; i < m; ++i) rays.emplace_back(Direction::from_angle(angle(rng)), (coin(rng) ? 1 : -1) * weight(rng));
        } else {
            for (int i = 0; i < m / 2; ++i) {
                const double a = angle(rng);
                const double c = (coin(rng) ? 1 : -1) * weight(rng);
                double partner = -c;
                if (i == 0 && kind == 2) partner = c;
                if (i == 0 && kind == 3) partner = -1.5 * c;
                rays.emplace_back(Direction::from_angle(a), c);
                rays.emplace_back(Direction::from_angle(a + std::numbers::pi), partner);
            }
        }
        std::shuffle(rays.begin(), rays.end(), rng);
        std::vector<Direction> g;
        std::vector<double> c;
        for (const auto& [d, w] : rays) {
            g.push_back(d);
            c.push_back(w);
        }
        out.emplace_back(std::move(g), std::move(c));
    }
    return out;
}

}  // namespace vlt::test
