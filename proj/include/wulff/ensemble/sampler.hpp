#pragma once

// Grand-canonical samplers for Young diagrams and plane partitions, fugacity calibration,
// exact canonical conditioning and the empirical limit-shape experiment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wulff/convex/hausdorff.hpp"
#include "wulff/core/errors.hpp"
#include "wulff/dual/dual_wulff.hpp"
#include "wulff/partition/partition.hpp"

namespace wulff::ensemble {

using partition::Partition;
using Rational = boost::multiprecision::cpp_rational;

enum class Model { young, plane };

/// Number of particle sites carrying weight exponent l.
inline double site_multiplicity(Model m, long long l) { return m == Model::young ? 1.0 : static_cast<double>(l); }

/// Sum over sites of weight * E[zeta] for exponents l = 1..l_max.
inline double truncated_expected_volume(Model m, double x, long long l_max) {
    double e = 0.0;
    for (long long l = 1; l <= l_max; ++l) {
        const double q = std::pow(x, static_cast<double>(l));
        e += site_multiplicity(m, l) * static_cast<double>(l) * q / (1.0 - q);
    }
    return e;
}

/// Smallest cutoff whose dropped tail is below 1e-12 of the total (checked against a doubled cutoff).
inline long long volume_cutoff(Model m, double x) {
    if (!(x > 0.0 && x < 1.0)) throw InvalidParameter("fugacity must lie in (0, 1)");
    const double t = -std::log(x);
    // the tail beyond L is of order L^2 x^L / t; start where x^L ~ 1e-16 and grow until stable
    long long l = std::max<long long>(8, static_cast<long long>(std::ceil(40.0 / t)));
    while (true) {
        const double a = truncated_expected_volume(m, x, l);
        const double b = truncated_expected_volume(m, x, 2 * l);
        if (b - a <= 1e-12 * b) return l;
        l *= 2;
    }
}

struct GrandCanonicalSpec {
    Model model = Model::young;
    double x = 0.5;
    long long l_max = 0;
    std::uint64_t seed = 0;

    static GrandCanonicalSpec make(Model model, double x, std::uint64_t seed) {
        return {model, x, volume_cutoff(model, x), seed};
    }
};

inline double expected_volume(double x, Model m = Model::young) {
    if (x <= 0.0) return 0.0;
    return truncated_expected_volume(m, x, volume_cutoff(m, x));
}

/// Sum over sites of weight^2 Var[zeta], Var = q / (1 - q)^2.
inline double volume_variance(double x, Model m = Model::young) {
    if (x <= 0.0) return 0.0;
    const long long l_max = volume_cutoff(m, x);
    double v = 0.0;
    for (long long l = 1; l <= l_max; ++l) {
        const double q = std::pow(x, static_cast<double>(l));
        v += site_multiplicity(m, l) * static_cast<double>(l * l) * q / ((1.0 - q) * (1.0 - q));
    }
    return v;
}

/// Root of expected_volume(x) = n by bisection (expected_volume is increasing in x).
inline double solve_fugacity(double n, Model m = Model::young) {
    if (!(n > 0.0)) throw InvalidParameter("target volume must be positive");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (expected_volume(mid, m) < n ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// The generator owned by one sample: seeded from (seed, sample index).
inline std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// P(k) = (1 - q) q^k by inversion, q = x^l.
inline long long geometric_draw(std::mt19937_64& rng, double l_log_x) {
    // 1 - U lies in (0, 1]
    const double u = 1.0 - std::generate_canonical<double, 64>(rng);
    return static_cast<long long>(std::floor(std::log(u) / l_log_x));
}

/// zeta_l independent geometric; zeta_l columns of height l give the diagram.
inline Partition sample_young(const GrandCanonicalSpec& spec, std::uint64_t index = 0) {
    if (spec.model != Model::young) throw InvalidParameter("sample_young needs a Young-diagram spec");
    auto rng = sample_stream(spec.seed, index);
    const double log_x = std::log(spec.x);
    std::vector<long long> mult(static_cast<std::size_t>(spec.l_max + 1), 0);
    for (long long l = 1; l <= spec.l_max; ++l) mult[static_cast<std::size_t>(l)] = geometric_draw(rng, l * log_x);
    return Partition::from_multiplicities(mult);
}

struct PlaneSample {
    /// zeta[i-1][j-1] for sites with i + j - 1 <= l_max
    std::vector<std::vector<long long>> zeta;
    long long volume = 0;
};

inline PlaneSample sample_plane_partition(const GrandCanonicalSpec& spec, std::uint64_t index = 0) {
    if (spec.model != Model::plane) throw InvalidParameter("sample_plane_partition needs a plane spec");
    auto rng = sample_stream(spec.seed, index);
    const double log_x = std::log(spec.x);
    PlaneSample s;
    s.zeta.resize(static_cast<std::size_t>(spec.l_max));
    for (long long i = 1; i <= spec.l_max; ++i) {
        auto& row = s.zeta[static_cast<std::size_t>(i - 1)];
        row.resize(static_cast<std::size_t>(spec.l_max - i + 1));
        for (long long j = 1; i + j - 1 <= spec.l_max; ++j) {
            const long long l = i + j - 1;
            const long long k = geometric_draw(rng, l * log_x);
            row[static_cast<std::size_t>(j - 1)] = k;
            s.volume += k * l;
        }
    }
    return s;
}

inline Rational rational_pow(const Rational& x, unsigned k) {
    return Rational(BigInt(boost::multiprecision::pow(boost::multiprecision::numerator(x), k)),
                    BigInt(boost::multiprecision::pow(boost::multiprecision::denominator(x), k)));
}

struct UniformityReport {
    int n = 0;
    BigInt count = 0;
    std::vector<Rational> fugacities;
    /// probabilities[a][b]: P_x(Y_b | vol = n) at fugacities[a], Y_b in enumerate_partitions order
    std::vector<std::vector<Rational>> probabilities;
    bool uniform = false;
    bool fugacity_independent = false;
};

/// Exact conditional law of the grand-canonical diagram given vol = n. Weights use the
/// factors l <= n only; the remaining factors of the product are common to every diagram
/// of volume n and cancel.
inline UniformityReport canonical_uniformity_check(int n, const std::vector<Rational>& xs) {
    if (n < 1 || n > 10) throw InvalidParameter("canonical_uniformity_check covers 1 <= N <= 10");
    UniformityReport r;
    r.n = n;
    r.fugacities = xs;
    const auto diagrams = partition::enumerate_partitions(n);
    r.count = static_cast<long long>(diagrams.size());
    r.uniform = true;
    for (const Rational& x : xs) {
        if (!(x > 0 && x < 1)) throw InvalidParameter("fugacity must lie in (0, 1)");
        std::vector<Rational> w;
        Rational total = 0;
        for (const Partition& y : diagrams) {
            const auto mult = y.multiplicities();
            Rational weight = 1;
            for (int l = 1; l <= n; ++l) {
                const Rational q = rational_pow(x, static_cast<unsigned>(l));
                const long long z = l < static_cast<int>(mult.size()) ? mult[static_cast<std::size_t>(l)] : 0;
                weight *= (1 - q) * rational_pow(q, static_cast<unsigned>(z));
            }
            w.push_back(weight);
            total += weight;
        }
        for (auto& v : w) {
            v /= total;
            r.uniform = r.uniform && v == Rational(1, r.count);
        }
        r.probabilities.push_back(std::move(w));
    }
    r.fugacity_independent = std::all_of(r.probabilities.begin(), r.probabilities.end(),
                                         [&](const auto& p) { return p == r.probabilities.front(); });
    return r;
}

struct LimitShapeStats {
    long long n = 0;
    double fugacity = 0.0;
    double window = 0.1;
    bool window_enlarged = false;
    long long attempts = 0;
    std::vector<double> distances;
    std::vector<double> diagonal_points;
    std::vector<long long> volumes;
    std::vector<std::uint64_t> indices;  // stream index of each accepted draw
    double mean = 0.0, median = 0.0, q10 = 0.0, q90 = 0.0;
    double diagonal_mean = 0.0;

    double acceptance_rate() const { return attempts ? static_cast<double>(distances.size()) / attempts : 0.0; }
};

/// Where a decreasing polyline crosses y = x.
inline double diagonal_crossing(const std::vector<Vec2>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double a = pts[i - 1].y - pts[i - 1].x;
        const double b = pts[i].y - pts[i].x;
        if (a >= 0.0 && b <= 0.0) {
            const double t = a == b ? 0.0 : a / (a - b);
            return pts[i - 1].x + t * (pts[i].x - pts[i - 1].x);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

inline double quantile(std::vector<double> v, double p) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const double pos = p * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(i);
    return i + 1 < v.size() ? v[i] * (1 - f) + v[i + 1] * f : v[i];
}

inline constexpr double kLimitWindowLo = 0.0;
inline constexpr double kLimitWindowHi = 4.0;

/// Draws diagrams at x(N), keeps those with vol in [(1-w)N, (1+w)N], scales each by 1/sqrt(vol)
/// and measures its boundary against the limit curve inside [0, 4]^2. Attempts are evaluated
/// in index order, so results do not depend on `workers`. The window doubles (and the report
/// says so) when fewer than 1% of the first 1000 attempts are accepted.
inline LimitShapeStats limit_shape_experiment(long long n, int samples, std::uint64_t seed, double window = 0.1,
                                              int workers = 1) {
    if (n < 400) throw InvalidParameter("limit_shape_experiment needs N >= 400");
    if (samples < 1) throw InvalidParameter("need at least one sample");
    LimitShapeStats st;
    st.n = n;
    st.window = window;
    st.fugacity = solve_fugacity(static_cast<double>(n));
    const auto spec = GrandCanonicalSpec::make(Model::young, st.fugacity, seed);
    const std::vector<Vec2> vk = dual::vershik_kerov_curve(20000);

    struct Outcome {
        std::uint64_t index = 0;
        bool accepted = false;
        long long volume = 0;
        double distance = 0.0, diagonal = 0.0;
    };
    auto evaluate = [&](std::uint64_t index, double w) {
        Outcome o;
        o.index = index;
        const Partition y = sample_young(spec, index);
        o.volume = y.volume();
        if (o.volume < (1.0 - w) * n || o.volume > (1.0 + w) * n || y.empty()) return o;
        const auto pts = partition::scaled_profile(y);
        o.accepted = true;
        o.distance = convex::windowed_hausdorff(pts, vk, kLimitWindowLo, kLimitWindowHi, 2e-3);
        o.diagonal = diagonal_crossing(pts);
        return o;
    };

    const int batch = std::max(1, workers) * 16;
    std::uint64_t next = 0;
    while (static_cast<int>(st.distances.size()) < samples) {
        std::vector<Outcome> out(static_cast<std::size_t>(batch));
        if (workers <= 1) {
            for (int k = 0; k < batch; ++k) out[static_cast<std::size_t>(k)] = evaluate(next + k, st.window);
        } else {
            std::vector<std::future<void>> jobs;
            for (int wkr = 0; wkr < workers; ++wkr) {
                jobs.push_back(std::async(std::launch::async, [&, wkr] {
                    for (int k = wkr; k < batch; k += workers) out[static_cast<std::size_t>(k)] = evaluate(next + k, st.window);
                }));
            }
            for (auto& j : jobs) j.get();
        }
        for (const Outcome& o : out) {
            if (static_cast<int>(st.distances.size()) >= samples) break;
            ++st.attempts;
            if (!o.accepted) continue;
            st.distances.push_back(o.distance);
            st.diagonal_points.push_back(o.diagonal);
            st.volumes.push_back(o.volume);
            st.indices.push_back(o.index);
        }
        next += static_cast<std::uint64_t>(batch);
        if (st.attempts >= 1000 && st.acceptance_rate() < 0.01) {
            st.window *= 2.0;
            st.window_enlarged = true;
            st.attempts = 0;
            st.distances.clear();
            st.diagonal_points.clear();
            st.volumes.clear();
            st.indices.clear();
        }
    }
    double sum = 0.0, dsum = 0.0;
    for (double d : st.distances) sum += d;
    for (double d : st.diagonal_points) dsum += d;
    st.mean = sum / static_cast<double>(st.distances.size());
    st.diagonal_mean = dsum / static_cast<double>(st.diagonal_points.size());
    st.median = quantile(st.distances, 0.5);
    st.q10 = quantile(st.distances, 0.1);
    st.q90 = quantile(st.distances, 0.9);
    return st;
}

}  // namespace wulff::ensemble
