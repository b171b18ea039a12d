#pragma once

// Random-scan Glauber dynamics: one sweep is |Lambda| proposals, each accepted with the
// Metropolis or heat-bath rate.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wulff/ising/contours.hpp"
#include "wulff/ising/lattice.hpp"

namespace wulff::ising {

struct TraceRow {
    long long sweep;
    double magnetization;
    double energy;
    long long largest_contour_area;
};

struct Trajectory {
    std::vector<TraceRow> trace;
    SpinLattice final_state;
};

namespace detail {

/// Acceptance probability for spin s with neighbour sum n: table[(s + 1) / 2][n + 4].
inline std::array<std::array<double, 9>, 2> rate_table(RateKind kind, double beta, double h) {
    std::array<std::array<double, 9>, 2> t{};
    for (int s : {-1, 1}) {
        for (int n = -4; n <= 4; ++n) t[static_cast<std::size_t>((s + 1) / 2)][static_cast<std::size_t>(n + 4)] = rate_from_delta(kind, beta, s * n + h * s);
    }
    return t;
}

inline void sweep(SpinLattice& L, std::mt19937_64& rng, const std::array<std::array<double, 9>, 2>& table) {
    const int n = L.sites();
    const int l = L.side();
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < n; ++k) {
        const int site = pick(rng);
        const int s = L.spin(site);
        const double r = table[static_cast<std::size_t>((s + 1) / 2)][static_cast<std::size_t>(L.neighbour_sum(site % l, site / l) + 4)];
        if (r >= 1.0 || u(rng) < r) L.flip(site);
    }
}

}  // namespace detail

/// Runs `sweeps` sweeps from L and records one trace row per sweep (row 0 is the start).
inline Trajectory glauber_trajectory(SpinLattice L, long long sweeps, RateKind kind, std::uint64_t seed,
                                     bool record_contours = true) {
    if (sweeps < 1) throw InvalidParameter("sweeps must be >= 1");
    std::mt19937_64 rng(seed);
    const auto table = detail::rate_table(kind, L.beta(), L.field());
    Trajectory t{{}, L};
    auto record = [&](long long k) {
        t.trace.push_back({k, L.magnetization(), hamiltonian(L), record_contours ? longest_contour_area(L) : -1});
    };
    record(0);
    for (long long k = 1; k <= sweeps; ++k) {
        detail::sweep(L, rng, table);
        record(k);
    }
    t.final_state = L;
    return t;
}

/// Sweeps until the magnetization changes sign relative to the start (reaches >= 0 from a
/// negative start, <= 0 from a positive one); nullopt if that does not happen within max_sweeps.
inline std::optional<long long> sign_flip_time(SpinLattice L, long long max_sweeps, RateKind kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto table = detail::rate_table(kind, L.beta(), L.field());
    const bool negative = L.spin_sum() < 0;
    for (long long k = 1; k <= max_sweeps; ++k) {
        detail::sweep(L, rng, table);
        const long long s = L.spin_sum();
        if (negative ? s >= 0 : s <= 0) return k;
    }
    return std::nullopt;
}

struct SpinAverage {
    double mean = 0.0;
    /// batch-means standard error
    double standard_error = 0.0;
    long long samples = 0;
};

/// Time average of sigma(site) sampled after every sweep, after `burn_in` sweeps.
inline SpinAverage spin_time_average(SpinLattice L, long long sweeps, RateKind kind, std::uint64_t seed, int site = 0,
                                     long long burn_in = 1000, int batches = 100) {
    if (sweeps < batches) throw InvalidParameter("need at least one sweep per batch");
    std::mt19937_64 rng(seed);
    const auto table = detail::rate_table(kind, L.beta(), L.field());
    for (long long k = 0; k < burn_in; ++k) detail::sweep(L, rng, table);
    const long long per_batch = sweeps / batches;
    std::vector<double> means;
    for (int b = 0; b < batches; ++b) {
        long long sum = 0;
        for (long long k = 0; k < per_batch; ++k) {
            detail::sweep(L, rng, table);
            sum += L.spin(site);
        }
        means.push_back(static_cast<double>(sum) / per_batch);
    }
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= batches;
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= batches - 1;
    return {mean, std::sqrt(var / batches), per_batch * batches};
}

}  // namespace wulff::ising
