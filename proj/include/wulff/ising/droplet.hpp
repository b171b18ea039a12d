#pragma once

// Critical droplet of the metastable planar Ising model and the coarse-grained magnetization.

#include <cmath>
#include <vector>

#include "wulff/convex/wulff.hpp"
#include "wulff/ising/lattice.hpp"

namespace wulff::ising {

struct CriticalDroplet {
    convex::DropletSurface shape;
    /// dilation of W_tau: 1 / (h m*)
    double scale = 0.0;
    /// W_tau(W_tau) / (2 h m*)
    double phi = 0.0;
    /// h phi / (3 T)
    double lambda_c = 0.0;
};

/// Saddle droplet (1/(h m*)) W_tau, its free energy and the critical time exponent.
inline CriticalDroplet critical_droplet(const convex::DirectionField& tau, double h, double m_star, double temperature,
                                        int resolution = convex::kDefaultResolution2D) {
    if (tau.ambient_dim() != 2) throw InvalidParameter("the lattice droplet is planar");
    if (!(h > 0.0) || !(m_star > 0.0) || !(temperature > 0.0)) {
        throw InvalidParameter("h, m_star and T must be positive");
    }
    const auto w = convex::wulff_body(tau, resolution);
    CriticalDroplet d{w.boundary().scaled(1.0 / (h * m_star)), 1.0 / (h * m_star), 0.0, 0.0};
    d.phi = convex::surface_energy(w.boundary(), tau) / (2.0 * h * m_star);
    d.lambda_c = h * d.phi / (3.0 * temperature);
    return d;
}

/// ceil(sqrt(l)) sites.
inline int coarse_block_radius(int side) { return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(side)))); }

/// M(t) = mean spin over the sites within periodic distance r of l t, for t in [0, 1)^2.
inline std::vector<double> coarse_magnetization(const SpinLattice& L, const std::vector<Vec2>& ts, int radius) {
    if (L.topology() != Topology::torus) throw InvalidParameter("coarse magnetization is defined on the torus");
    if (radius < 0) throw InvalidParameter("radius must be non-negative");
    const int l = L.side();
    std::vector<double> out;
    out.reserve(ts.size());
    for (const Vec2& t : ts) {
        const Vec2 c = t * static_cast<double>(l);
        long long sum = 0, count = 0;
        const int x0 = static_cast<int>(std::floor(c.x)) - radius - 1;
        const int y0 = static_cast<int>(std::floor(c.y)) - radius - 1;
        for (int y = y0; y <= y0 + 2 * radius + 3; ++y) {
            for (int x = x0; x <= x0 + 2 * radius + 3; ++x) {
                if (std::hypot(x - c.x, y - c.y) > radius) continue;
                sum += L.spin_or_boundary(x, y);
                ++count;
            }
        }
        out.push_back(count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0);
    }
    return out;
}

inline std::vector<double> coarse_magnetization(const SpinLattice& L, const std::vector<Vec2>& ts) {
    return coarse_magnetization(L, ts, coarse_block_radius(L.side()));
}

}  // namespace wulff::ising
