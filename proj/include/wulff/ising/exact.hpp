#pragma once

// Exhaustive enumeration of small lattices: partition functions, Gibbs averages, the
// canonical (fixed magnetization) law, finite-size surface tension and detailed balance.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wulff/ising/lattice.hpp"

namespace wulff::ising {

inline constexpr int kExactSideGuard = 4;
inline constexpr int kExactSideHardLimit = 5;

namespace detail {

inline void check_enumerable(const SpinLattice& L, bool allow_large) {
    if (L.side() > kExactSideHardLimit) throw GuardExceeded("exact enumeration is limited to side <= 5");
    if (L.side() > kExactSideGuard && !allow_large) {
        throw GuardExceeded("exact enumeration of side " + std::to_string(L.side()) + " exceeds the guard of 4; pass allow_large");
    }
}

/// Calls visit(bits, energy, lattice) for every configuration.
template <class Visit>
void for_each_state(SpinLattice L, Visit&& visit) {
    const std::uint64_t count = std::uint64_t{1} << L.sites();
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        L.load_bits(bits);
        visit(bits, hamiltonian(L), static_cast<const SpinLattice&>(L));
    }
}

}  // namespace detail

struct ExactGibbs {
    double log_z = 0.0;
    /// <sigma(0)>, the spin at site (0, 0)
    double mean_spin0 = 0.0;
    double mean_magnetization = 0.0;
    double mean_energy = 0.0;

    double z() const { return std::exp(log_z); }
};

/// Z = sum exp(-beta H) with averages, by enumeration of all 2^{l^2} states (log-sum-exp).
inline ExactGibbs exact_partition_function(const SpinLattice& L, bool allow_large = false) {
    detail::check_enumerable(L, allow_large);
    const double beta = L.beta();
    double e_min = std::numeric_limits<double>::infinity();
    detail::for_each_state(L, [&](std::uint64_t, double e, const SpinLattice&) { e_min = std::min(e_min, e); });
    double z = 0.0, s0 = 0.0, m = 0.0, en = 0.0;
    detail::for_each_state(L, [&](std::uint64_t, double e, const SpinLattice& s) {
        const double w = std::exp(-beta * (e - e_min));
        z += w;
        s0 += w * s.spin(0);
        m += w * s.magnetization();
        en += w * e;
    });
    return {std::log(z) - beta * e_min, s0 / z, m / z, en / z};
}

/// Spin sum closest to rho |Lambda| (rounding toward zero) that has the parity of |Lambda|.
inline long long canonical_spin_sum(int sites, double rho) {
    if (rho < -1.0 || rho > 1.0) throw InvalidParameter("rho must lie in [-1, 1]");
    long long target = static_cast<long long>(rho * sites);
    if ((target - sites) % 2 != 0) target += target > 0 ? -1 : 1;
    return target;
}

struct CanonicalState {
    std::uint64_t bits;
    double energy;
    double probability;
};

/// Gibbs law restricted to configurations with spin sum canonical_spin_sum(|Lambda|, rho).
inline std::vector<CanonicalState> exact_canonical_law(const SpinLattice& L, double rho, bool allow_large = false) {
    detail::check_enumerable(L, allow_large);
    const long long target = canonical_spin_sum(L.sites(), rho);
    std::vector<CanonicalState> out;
    double e_min = std::numeric_limits<double>::infinity();
    detail::for_each_state(L, [&](std::uint64_t bits, double e, const SpinLattice& s) {
        if (s.spin_sum() != target) return;
        out.push_back({bits, e, 0.0});
        e_min = std::min(e_min, e);
    });
    double z = 0.0;
    for (auto& st : out) z += st.probability = std::exp(-L.beta() * (st.energy - e_min));
    for (auto& st : out) st.probability /= z;
    return out;
}

/// -(1 / (beta l)) ln(Z_split(n) / Z_plus) on a box of side l.
inline double surface_tension_estimate(int side, Vec2 n, double beta, bool allow_large = false) {
    if (!(beta > 0.0)) throw InvalidParameter("beta must be positive");
    const auto split = SpinLattice::box(side, BoundaryCondition::split(n), 0.0, beta);
    const auto plus = SpinLattice::box(side, BoundaryCondition::plus(), 0.0, beta);
    const double log_ratio = exact_partition_function(split, allow_large).log_z - exact_partition_function(plus, allow_large).log_z;
    return -log_ratio / (beta * side);
}

/// max over states and sites of |mu(s) c(s, x) - mu(s^x) c(s^x, x)| / (mu(s) c(s, x)),
/// with mu unnormalized. Zero up to rounding for both rate families.
inline double detailed_balance_error(const SpinLattice& L, RateKind kind, bool allow_large = false) {
    detail::check_enumerable(L, allow_large);
    double worst = 0.0;
    SpinLattice flipped = L;
    detail::for_each_state(L, [&](std::uint64_t bits, double e, const SpinLattice& s) {
        for (int site = 0; site < s.sites(); ++site) {
            flipped.load_bits(bits ^ (std::uint64_t{1} << site));
            const double e2 = hamiltonian(flipped);
            const double forward = rate_from_delta(kind, L.beta(), s.delta_energy(site));
            const double backward = rate_from_delta(kind, L.beta(), flipped.delta_energy(site));
            // mu(s)/mu(s^x) = exp(-beta (e - e2))
            const double lhs = forward;
            const double rhs = std::exp(-L.beta() * (e2 - e)) * backward;
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
        }
    });
    return worst;
}

}  // namespace wulff::ising
