#pragma once

// Acceptance criteria 1-13, shared by the acceptance test binary and `wulffctl verify`.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wulff/acceptance/reference_values.hpp"
#include "wulff/convex/wulff.hpp"
#include "wulff/dual/dual_wulff.hpp"
#include "wulff/ensemble/sampler.hpp"
#include "wulff/ising/droplet.hpp"
#include "wulff/ising/dynamics.hpp"
#include "wulff/ising/exact.hpp"
#include "wulff/partition/partition.hpp"
#include "wulff/skyscraper/generating.hpp"

namespace wulff::acceptance {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string suite;
    std::string title;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome(int workers)> run;
};

struct Result {
    int id;
    std::string title;
    bool passed;
    double seconds;
    std::string detail;
};

namespace detail {

inline Polynomial poly(const std::vector<long long>& c) { return Polynomial(std::vector<BigInt>(c.begin(), c.end())); }

inline int nonzero_terms(const Polynomial& p) {
    int k = 0;
    for (const auto& c : p.coeffs()) k += c != 0;
    return k;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// `coefficients` counts x^0..x^deg including the zero ones; the reference tables have two zeros each.
inline Outcome pedestal_matches(int k, const std::vector<long long>& expected, int coefficients, int nonzero) {
    const auto p = skyscraper::spatial_pedestal_polynomial(2, 2, k);
    const bool ok = p == poly(expected) && static_cast<int>(p.coeffs().size()) == coefficients && nonzero_terms(p) == nonzero;
    return {ok, fmt("%zu coefficients (degree %d), %d nonzero, P(1) = %s", p.coeffs().size(), p.degree(), nonzero_terms(p),
                    p.value_at_one().str().c_str())};
}

inline Outcome spatial_prefixes() {
    const auto a = skyscraper::spatial_series(2, 2, 2, 10);
    const auto b = skyscraper::spatial_series(2, 2, 3, 10);
    int mismatches = 0;
    for (int d = 0; d <= 10; ++d) {
        mismatches += a[d] != reference::kSpatial222[static_cast<std::size_t>(d)];
        mismatches += b[d] != reference::kSpatial223[static_cast<std::size_t>(d)];
    }
    return {mismatches == 0, fmt("%d mismatching coefficients over x^0..x^10", mismatches)};
}

inline Outcome hook_consistency() {
    using skyscraper::Diagram;
    const std::vector<std::pair<Diagram, Diagram>> shapes = {
        {Diagram::rectangle(2, 2), Diagram{}},       {Diagram::rectangle(2, 3), Diagram{}},
        {Diagram::rectangle(2, 2), Diagram({1})},    {Diagram::rectangle(3, 3), Diagram({2, 1})},
        {Diagram::rectangle(2, 3), Diagram({2})},    {Diagram::rectangle(3, 2), Diagram({1})},
    };
    constexpr int degree = 20;
    int failures = 0;
    for (const auto& [outer, hole] : shapes) {
        const auto board = skyscraper::skew_board(outer, hole);
        const auto brute = skyscraper::brute_force_series(board, degree);
        const auto skew = skyscraper::skew_series(outer, hole, degree);
        const auto factored =
            skyscraper::pedestal_polynomial(outer, hole).as_series(degree) * partition::bounded_parts_series(board.size(), degree);
        failures += !(brute == skew && skew == factored);
    }
    return {failures == 0, fmt("%d of %zu shapes disagree to degree %d", failures, shapes.size(), degree)};
}

inline Outcome non_divisibility() {
    std::vector<int> s8(8), s12(12);
    std::iota(s8.begin(), s8.end(), 1);
    std::iota(s12.begin(), s12.end(), 1);
    const auto r222 = poly_divmod(Polynomial::product_one_minus(s8), poly(reference::kPedestal222));
    const auto r223 = poly_divmod(Polynomial::product_one_minus(s12), poly(reference::kPedestal223));
    return {!r222.exact() && !r223.exact(),
            fmt("remainder degrees %d and %d", r222.remainder.degree(), r223.remainder.degree())};
}

inline Outcome stanley(std::uint64_t seed) {
    const auto board = skyscraper::skew_board(skyscraper::Diagram::rectangle(3, 3));
    long long exhaustive = 0, failures = 0;
    skyscraper::for_each_skyscraper(board, 10, [&](const skyscraper::Heights& s) {
        const auto pair = skyscraper::stanley_forward(board, s);
        failures += !(skyscraper::stanley_inverse(board, pair.pedestal, pair.parts) == s);
        ++exhaustive;
    });
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> draw(0, 15);
    constexpr int random_instances = 100000;
    for (int t = 0; t < random_instances; ++t) {
        skyscraper::Heights s{std::vector<long long>(static_cast<std::size_t>(board.size()))};
        for (int k = 0; k < board.size(); ++k) {
            long long v = draw(rng);
            for (int p : board.predecessors(k)) v = std::min(v, s.values[static_cast<std::size_t>(p)]);
            s.values[static_cast<std::size_t>(k)] = v;
        }
        const auto pair = skyscraper::stanley_forward(board, s);
        failures += pair.pedestal.volume() + pair.parts.volume() != s.volume();
    }
    return {failures == 0 && exhaustive > 0,
            fmt("%lld exhaustive + %d random instances, %lld failures", exhaustive, random_instances, failures)};
}

inline Outcome vershik_kerov() {
    const auto eta = dual::OctantField::staircase_entropy();
    const auto m = dual::maximizer(eta);
    const double dist = convex::windowed_hausdorff(m.points, dual::vershik_kerov_curve(20000), 0.0, 6.0);
    const double diag = ensemble::diagonal_crossing(m.points);
    const double hr = dual::hr_constant().functional;
    const bool ok = dist < 1e-3 && std::abs(diag - 0.54044) <= 1e-4 && std::abs(hr - 2.56510) <= 1e-4;
    return {ok, fmt("hausdorff %.3g, diagonal %.6f, hr %.6f", dist, diag, hr)};
}

inline Outcome hrr() {
    const double lp = partition::log_big(partition::euler_series(200)[200]);
    const double gap = std::abs(lp - partition::hrr_log_asymptote(200));
    return {gap <= 0.05, fmt("ln pi(200) = %.6f, gap %.4f", lp, gap)};
}

inline Outcome wulff_identities(std::uint64_t seed) {
    using namespace convex;
    const std::vector<DirectionField> fields = {DirectionField::isotropic(2), DirectionField::l1(2), DirectionField::cos4()};
    double worst_identity = 0.0;
    for (const auto& f : fields) worst_identity = std::max(worst_identity, volume_identity_check(f, 3600));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int violations = 0, tried = 0;
    for (const auto& f : fields) {
        const auto w = wulff_body(f, 3600);
        const double best = surface_energy(w.boundary(), f);
        for (int i = 0; i < 200; ++i) {
            // random star polygon rescaled to the Wulff body's area
            std::vector<double> angles;
            for (int k = 0; k < 5 + i % 40; ++k) angles.push_back(2 * std::numbers::pi * u(rng));
            std::sort(angles.begin(), angles.end());
            Polygon p;
            for (double a : angles) p.push_back(from_angle(a) * (0.3 + 1.7 * u(rng)));
            if (!is_simple(p)) continue;
            const double lambda = std::sqrt(w.volume() / std::abs(signed_area(p)));
            for (auto& v : p) v = v * lambda;
            ++tried;
            violations += surface_energy(DropletSurface::polygon(p), f) < best - 1e-3 * best;
        }
    }
    return {worst_identity < 1e-4 && violations == 0,
            fmt("worst identity residual %.3g, %d violations over %d polygons", worst_identity, violations, tried)};
}

inline Outcome canonical_uniformity() {
    const std::vector<ensemble::Rational> xs = {ensemble::Rational(1, 3), ensemble::Rational(1, 2)};
    int bad = 0;
    for (int n = 1; n <= 10; ++n) {
        const auto r = ensemble::canonical_uniformity_check(n, xs);
        bad += !(r.uniform && r.fugacity_independent);
    }
    return {bad == 0, fmt("%d of 10 volumes not exactly uniform", bad)};
}

inline Outcome limit_shape_trend(std::uint64_t seed, int workers) {
    std::vector<double> medians;
    for (long long n : {400LL, 2500LL, 10000LL}) medians.push_back(ensemble::limit_shape_experiment(n, 200, seed, 0.1, workers).median);
    return {medians[0] > medians[1] && medians[1] > medians[2],
            fmt("medians %.5f > %.5f > %.5f", medians[0], medians[1], medians[2])};
}

inline Outcome ising_exactness(std::uint64_t seed) {
    using namespace ising;
    double balance = 0.0;
    for (int side : {2, 3}) {
        for (auto kind : {RateKind::metropolis, RateKind::heatbath}) {
            balance = std::max(balance, detailed_balance_error(SpinLattice::box(side, BoundaryCondition::plus(), 0.3, 0.7), kind));
            balance = std::max(balance, detailed_balance_error(SpinLattice::torus(std::max(side, 3), 0.3, 0.7), kind));
        }
    }
    auto box = SpinLattice::box(3, BoundaryCondition::plus(), 0.0, 1.0, 1);
    const double ground = hamiltonian(box);
    int perimeter_failures = 0;
    for (std::uint64_t bits = 0; bits < 512; ++bits) {
        box.load_bits(bits);
        perimeter_failures += hamiltonian(box) - ground != static_cast<double>(extract_contours(box, false).total_length());
    }
    std::string z;
    bool within = true;
    for (double beta : {0.3, 0.7}) {
        const auto L = SpinLattice::torus(3, 0.2, beta, 1);
        const double exact = exact_partition_function(L).mean_spin0;
        const auto avg = spin_time_average(L, 1000000, RateKind::metropolis, seed);
        const double score = std::abs(avg.mean - exact) / avg.standard_error;
        within = within && score < 4.0;
        z += fmt(" z(%.1f) = %.2f", beta, score);
    }
    return {balance < 1e-12 && perimeter_failures == 0 && within,
            fmt("balance error %.2g, %d perimeter failures,", balance, perimeter_failures) + z};
}

inline Outcome metastability(std::uint64_t seed) {
    std::vector<double> medians;
    for (double h : {0.7, 0.5, 0.35}) {
        std::vector<double> times;
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto t = ising::sign_flip_time(ising::SpinLattice::torus(64, h, 0.7, -1), 1000000, ising::RateKind::metropolis,
                                                 seed + s);
            times.push_back(t ? static_cast<double>(*t) : std::numeric_limits<double>::infinity());
        }
        medians.push_back(ensemble::quantile(times, 0.5));
    }
    // lambda_c / h = Phi / (3T) must hold to rounding for any field
    double worst = 0.0;
    for (double h : {0.1, 0.35, 0.7}) {
        const auto d = ising::critical_droplet(convex::DirectionField::cos4(), h, 0.9, 1.0 / 0.7);
        worst = std::max(worst, std::abs(d.lambda_c / h - d.phi / (3 * (1.0 / 0.7))) / (d.phi / (3 * (1.0 / 0.7))));
    }
    return {medians[0] < medians[1] && medians[1] < medians[2] && worst <= 4 * std::numeric_limits<double>::epsilon(),
            fmt("median flip sweeps %.1f < %.1f < %.1f, identity residual %.2g", medians[0], medians[1], medians[2], worst)};
}

}  // namespace detail

inline constexpr std::uint64_t kAcceptanceSeed = 2026;

inline std::vector<Criterion> criteria(std::uint64_t seed = kAcceptanceSeed) {
    using namespace detail;
    return {
        {1, "combinatorics", "pedestal polynomial 2x2x2", 5.0,
         [](int) { return pedestal_matches(2, reference::kPedestal222, 17, 15); }},
        {2, "combinatorics", "pedestal polynomial 2x2x3", 30.0,
         [](int) { return pedestal_matches(3, reference::kPedestal223, 43, 41); }},
        {3, "combinatorics", "spatial series prefixes", 0.0, [](int) { return spatial_prefixes(); }},
        {4, "combinatorics", "MacMahon / q-hook consistency", 0.0, [](int) { return hook_consistency(); }},
        {5, "combinatorics", "non-divisibility of the Euler products", 0.0, [](int) { return non_divisibility(); }},
        {6, "combinatorics", "Stanley bijection", 0.0, [seed](int) { return stanley(seed); }},
        {7, "geometry", "Vershik-Kerov via dual construction", 0.0, [](int) { return vershik_kerov(); }},
        {8, "combinatorics", "Hardy-Ramanujan desk check", 1.0, [](int) { return hrr(); }},
        {9, "geometry", "Wulff identities and minimality", 0.0, [seed](int) { return wulff_identities(seed); }},
        {10, "ensemble", "canonical uniformity", 0.0, [](int) { return canonical_uniformity(); }},
        {11, "ensemble", "limit-shape trend", 0.0, [seed](int w) { return limit_shape_trend(seed, w); }},
        {12, "ising", "Ising exactness", 60.0, [seed](int) { return ising_exactness(seed); }},
        {13, "ising", "metastability trend", 0.0, [seed](int) { return metastability(seed); }},
    };
}

inline std::vector<std::string> suites() { return {"all", "combinatorics", "geometry", "ensemble", "ising"}; }

/// Runs the selected suite, printing one PASS/FAIL line per criterion as it finishes.
inline std::vector<Result> run_suite(const std::string& suite, std::ostream& out, int workers = 1,
                                     std::uint64_t seed = kAcceptanceSeed) {
    if (std::find(suites().begin(), suites().end(), suite) == suites().end()) {
        throw InvalidParameter("unknown acceptance suite '" + suite + "'");
    }
    std::vector<Result> results;
    for (const auto& c : criteria(seed)) {
        if (suite != "all" && c.suite != suite) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(workers);
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0 && secs > c.time_limit) {
            o.passed = false;
            o.detail += detail::fmt(" (over the %.0f s limit)", c.time_limit);
        }
        results.push_back({c.id, c.title, o.passed, secs, o.detail});
        out << (o.passed ? "PASS" : "FAIL") << detail::fmt("  %2d  %-40s %8.2f s  ", c.id, c.title.c_str(), secs) << o.detail
            << '\n'
            << std::flush;
    }
    return results;
}

inline bool all_passed(const std::vector<Result>& results) {
    return std::all_of(results.begin(), results.end(), [](const Result& r) { return r.passed; });
}

}  // namespace wulff::acceptance
