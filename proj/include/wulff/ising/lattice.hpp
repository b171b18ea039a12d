#pragma once

// Finite two-dimensional Ising model with the half-weight normalization
//   H = -1/2 sum_{nn} s s' - 1/2 sum_{boundary bonds} s xi - h/2 sum s,
// so that a single spin flipped against an aligned sea costs 4 - h.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"

namespace wulff::ising {

enum class Topology { torus, box };

/// Boundary spins outside a box: all +, all -, or split by a line through the box center
/// (+ on the side its normal points to).
struct BoundaryCondition {
    enum class Kind { plus, minus, split } kind = Kind::plus;
    Vec2 normal{0.0, 1.0};

    static BoundaryCondition plus() { return {Kind::plus, {0, 1}}; }
    static BoundaryCondition minus() { return {Kind::minus, {0, 1}}; }
    static BoundaryCondition split(Vec2 n) {
        if (norm(n) == 0.0) throw InvalidParameter("split boundary needs a non-zero normal");
        return {Kind::split, normalized(n)};
    }

    /// "+", "-", "split:nx,ny"
    static BoundaryCondition parse(const std::string& s) {
        if (s == "+" || s == "plus") return plus();
        if (s == "-" || s == "minus") return minus();
        if (s.rfind("split:", 0) == 0) {
            const auto comma = s.find(',', 6);
            if (comma == std::string::npos) throw InvalidParameter("split boundary expects split:nx,ny");
            return split({std::stod(s.substr(6, comma - 6)), std::stod(s.substr(comma + 1))});
        }
        throw InvalidParameter("unknown boundary condition: " + s);
    }
};

class SpinLattice {
public:
    SpinLattice(int side, Topology topology, BoundaryCondition bc, double h, double beta, int initial = -1)
        : l_(side), topology_(topology), bc_(bc), h_(h), beta_(beta),
          spins_(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), static_cast<std::int8_t>(initial)) {
        if (side < 1) throw InvalidParameter("lattice side must be >= 1");
        if (topology == Topology::torus && side < 3) throw InvalidParameter("torus side must be >= 3");
        if (!(beta >= 0.0)) throw InvalidParameter("beta must be non-negative");
        if (initial != 1 && initial != -1) throw InvalidParameter("spins are +1 or -1");
    }

    static SpinLattice torus(int side, double h, double beta, int initial = -1) {
        return SpinLattice(side, Topology::torus, BoundaryCondition::plus(), h, beta, initial);
    }
    static SpinLattice box(int side, BoundaryCondition bc, double h, double beta, int initial = -1) {
        return SpinLattice(side, Topology::box, bc, h, beta, initial);
    }

    int side() const { return l_; }
    int sites() const { return l_ * l_; }
    Topology topology() const { return topology_; }
    const BoundaryCondition& boundary() const { return bc_; }
    double field() const { return h_; }
    double beta() const { return beta_; }
    void set_beta(double b) { beta_ = b; }
    void set_field(double h) { h_ = h; }

    int spin(int x, int y) const { return spins_[index(x, y)]; }
    int spin(int site) const { return spins_[static_cast<std::size_t>(site)]; }
    void set(int x, int y, int s) { spins_[index(x, y)] = static_cast<std::int8_t>(s); }
    void set(int site, int s) { spins_[static_cast<std::size_t>(site)] = static_cast<std::int8_t>(s); }
    void flip(int site) { spins_[static_cast<std::size_t>(site)] = static_cast<std::int8_t>(-spins_[static_cast<std::size_t>(site)]); }
    void fill(int s) { std::fill(spins_.begin(), spins_.end(), static_cast<std::int8_t>(s)); }
    const std::vector<std::int8_t>& spins() const { return spins_; }

    /// Assigns spins from the low l^2 bits of `bits` (bit k set = +1 at site k).
    void load_bits(std::uint64_t bits) {
        for (int k = 0; k < sites(); ++k) set(k, (bits >> k) & 1U ? 1 : -1);
    }

    /// Spin at (x, y), which may lie one step outside the box (boundary spin) or wrap on a torus.
    int spin_or_boundary(int x, int y) const {
        if (topology_ == Topology::torus) return spin((x % l_ + l_) % l_, (y % l_ + l_) % l_);
        if (x >= 0 && y >= 0 && x < l_ && y < l_) return spin(x, y);
        return boundary_spin(x, y);
    }

    int boundary_spin(int x, int y) const {
        switch (bc_.kind) {
            case BoundaryCondition::Kind::plus: return 1;
            case BoundaryCondition::Kind::minus: return -1;
            case BoundaryCondition::Kind::split: {
                const double c = 0.5 * (l_ - 1);
                return dot(Vec2{x - c, y - c}, bc_.normal) >= 0.0 ? 1 : -1;
            }
        }
        return 1;
    }

    double magnetization() const {
        long long s = 0;
        for (auto v : spins_) s += v;
        return static_cast<double>(s) / sites();
    }

    long long spin_sum() const {
        long long s = 0;
        for (auto v : spins_) s += v;
        return s;
    }

    /// Sum over the four neighbours (boundary spins included in box mode).
    int neighbour_sum(int x, int y) const {
        return spin_or_boundary(x + 1, y) + spin_or_boundary(x - 1, y) + spin_or_boundary(x, y + 1) +
               spin_or_boundary(x, y - 1);
    }

    /// H(sigma^x) - H(sigma) for flipping the spin at `site`.
    double delta_energy(int site) const {
        const int x = site % l_, y = site / l_;
        const int s = spin(site);
        return s * neighbour_sum(x, y) + h_ * s;
    }

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * static_cast<std::size_t>(l_) + static_cast<std::size_t>(x); }

    int l_;
    Topology topology_;
    BoundaryCondition bc_;
    double h_;
    double beta_;
    std::vector<std::int8_t> spins_;
};

/// Each nearest-neighbour bond once (right and up from every site; in box mode bonds to the
/// boundary on all four sides), plus the field term.
inline double hamiltonian(const SpinLattice& L) {
    const int l = L.side();
    double bonds = 0.0;
    long long sum = 0;
    for (int y = 0; y < l; ++y) {
        for (int x = 0; x < l; ++x) {
            const int s = L.spin(x, y);
            sum += s;
            bonds += s * L.spin_or_boundary(x + 1, y) + s * L.spin_or_boundary(x, y + 1);
            if (L.topology() == Topology::box) {
                if (x == 0) bonds += s * L.boundary_spin(-1, y);
                if (y == 0) bonds += s * L.boundary_spin(x, -1);
            }
        }
    }
    return -0.5 * bonds - 0.5 * L.field() * static_cast<double>(sum);
}

enum class RateKind { metropolis, heatbath };

inline RateKind parse_rate(const std::string& s) {
    if (s == "metropolis") return RateKind::metropolis;
    if (s == "heatbath") return RateKind::heatbath;
    throw InvalidParameter("unknown rate family: " + s);
}

inline double rate_from_delta(RateKind kind, double beta, double delta) {
    if (kind == RateKind::metropolis) return delta <= 0.0 ? 1.0 : std::exp(-beta * delta);
    return 1.0 / (1.0 + std::exp(beta * delta));
}

struct FlipRates {
    double metropolis;
    double heatbath;
};

inline FlipRates flip_rates(const SpinLattice& L, int site) {
    if (site < 0 || site >= L.sites()) throw InvalidParameter("site outside the lattice");
    const double d = L.delta_energy(site);
    return {rate_from_delta(RateKind::metropolis, L.beta(), d), rate_from_delta(RateKind::heatbath, L.beta(), d)};
}

}  // namespace wulff::ising
