#include <catch2/catch_amalgamated.hpp>

#include <boost/math/distributions/chi_squared.hpp>
#include <numbers>

#include "wulff/ensemble/sampler.hpp"
#include "wulff/skyscraper/generating.hpp"

using namespace wulff;
using namespace wulff::ensemble;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// Pearson statistic of observed counts against probabilities (last bin takes the remainder).
double chi_square(const std::vector<long long>& observed, std::vector<double> probs, long long total) {
    double rest = 1.0;
    for (double p : probs) rest -= p;
    probs.push_back(rest);
    double chi = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double e = probs[i] * static_cast<double>(total);
        const double d = static_cast<double>(observed[i]) - e;
        chi += d * d / e;
    }
    return chi;
}

double chi_square_cutoff(int dof) {
    return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), 1e-4));
}

}  // namespace

TEST_CASE("cutoff keeps the truncated expected volume accurate") {
    for (double x : {0.1, 0.5, 0.9, 0.99, 0.999}) {
        for (Model m : {Model::young, Model::plane}) {
            const long long l = volume_cutoff(m, x);
            const double a = truncated_expected_volume(m, x, l);
            const double b = truncated_expected_volume(m, x, 2 * l);
            REQUIRE(std::abs(b - a) < 1e-9 * b);
        }
    }
    REQUIRE_THROWS_AS(volume_cutoff(Model::young, 1.0), InvalidParameter);
    REQUIRE_THROWS_AS(GrandCanonicalSpec::make(Model::young, 0.0, 1), InvalidParameter);
}

TEST_CASE("expected volume and fugacity") {
    REQUIRE(expected_volume(0.0) == 0.0);
    REQUIRE(expected_volume(1e-6) < 2e-6);
    // sum_l l x^l / (1 - x^l) = sum_n sigma(n) x^n
    const double x = 0.3;
    double divisor_sum = 0.0;
    for (int n = 1; n < 200; ++n) {
        long long sigma = 0;
        for (int d = 1; d <= n; ++d) sigma += n % d == 0 ? d : 0;
        divisor_sum += static_cast<double>(sigma) * std::pow(x, n);
    }
    REQUIRE_THAT(expected_volume(x), WithinRel(divisor_sum, 1e-12));

    for (double n : {1e2, 1e3, 1e4}) {
        const double xn = solve_fugacity(n);
        REQUIRE_THAT(expected_volume(xn), WithinAbs(n, 1e-6));
    }
    const double t = -std::log(solve_fugacity(1e4));
    REQUIRE(std::abs(t - kPi / std::sqrt(6e4)) < 0.02 * t);
    REQUIRE(std::abs(solve_fugacity(1e4) - std::exp(-kPi / std::sqrt(6e4))) < 0.02 * solve_fugacity(1e4));
}

TEST_CASE("young sampler: tiny fugacity gives the empty diagram") {
    const auto spec = GrandCanonicalSpec::make(Model::young, 1e-9, 5);
    for (std::uint64_t i = 0; i < 2000; ++i) REQUIRE(sample_young(spec, i).empty());
}

TEST_CASE("young sampler: geometric means of the multiplicities") {
    const auto spec = GrandCanonicalSpec::make(Model::young, 0.9, 11);
    const int samples = 100000;
    std::array<double, 6> sum{}, sq{};
    double vol_sum = 0.0;
    for (int s = 0; s < samples; ++s) {
        const auto y = sample_young(spec, static_cast<std::uint64_t>(s));
        const auto mult = y.multiplicities();
        for (int l = 1; l <= 5; ++l) {
            const double z = l < static_cast<int>(mult.size()) ? static_cast<double>(mult[static_cast<std::size_t>(l)]) : 0.0;
            sum[l] += z;
            sq[l] += z * z;
        }
        vol_sum += static_cast<double>(y.volume());
    }
    for (int l = 1; l <= 5; ++l) {
        const double q = std::pow(0.9, l);
        const double mean = q / (1 - q);
        const double sd = std::sqrt(q) / (1 - q);
        REQUIRE(std::abs(sum[l] / samples - mean) < 3 * sd / std::sqrt(samples));
    }
    const double sigma = std::sqrt(volume_variance(0.9) / samples);
    REQUIRE(std::abs(vol_sum / samples - expected_volume(0.9)) < 4 * sigma);
}

TEST_CASE("young sampler: volume law at x = 1/2") {
    const double x = 0.5;
    const auto spec = GrandCanonicalSpec::make(Model::young, x, 23);
    const auto euler = partition::euler_series(10);
    double norm_factor = 1.0;
    for (int l = 1; l < 200; ++l) norm_factor *= 1.0 - std::pow(x, l);
    std::vector<double> probs;
    for (int n = 0; n <= 10; ++n) probs.push_back(euler[n].convert_to<double>() * std::pow(x, n) * norm_factor);
    const long long total = 100000;
    std::vector<long long> obs(12, 0);
    for (long long s = 0; s < total; ++s) {
        const long long v = sample_young(spec, static_cast<std::uint64_t>(s)).volume();
        ++obs[static_cast<std::size_t>(std::min<long long>(v, 11))];
    }
    REQUIRE(chi_square(obs, probs, total) < chi_square_cutoff(11));
}

TEST_CASE("sampling is deterministic per seed and index") {
    const auto spec = GrandCanonicalSpec::make(Model::young, 0.95, 42);
    for (std::uint64_t i = 0; i < 50; ++i) REQUIRE(sample_young(spec, i) == sample_young(spec, i));
    const auto other = GrandCanonicalSpec::make(Model::young, 0.95, 43);
    int differ = 0;
    for (std::uint64_t i = 0; i < 50; ++i) differ += !(sample_young(spec, i) == sample_young(other, i));
    REQUIRE(differ > 40);
    const auto plane = GrandCanonicalSpec::make(Model::plane, 0.7, 42);
    REQUIRE(sample_plane_partition(plane, 3).zeta == sample_plane_partition(plane, 3).zeta);
}

TEST_CASE("canonical conditioning is uniform and fugacity independent") {
    const std::vector<Rational> xs = {Rational(1, 3), Rational(1, 2)};
    for (int n = 1; n <= 10; ++n) {
        const auto r = canonical_uniformity_check(n, xs);
        REQUIRE(r.count == partition::euler_series(10)[n]);
        REQUIRE(r.uniform);
        REQUIRE(r.fugacity_independent);
    }
    const auto four = canonical_uniformity_check(4, {Rational(1, 2)});
    REQUIRE(four.probabilities[0].size() == 5);
    for (const auto& p : four.probabilities[0]) REQUIRE(p == Rational(1, 5));
    REQUIRE(canonical_uniformity_check(1, {Rational(1, 2)}).probabilities[0][0] == 1);
    REQUIRE_THROWS_AS(canonical_uniformity_check(11, xs), InvalidParameter);
}

TEST_CASE("plane partition sampler") {
    const auto empty = GrandCanonicalSpec::make(Model::plane, 1e-9, 1);
    for (std::uint64_t i = 0; i < 1000; ++i) REQUIRE(sample_plane_partition(empty, i).volume == 0);

    const double x = 0.5;
    const auto spec = GrandCanonicalSpec::make(Model::plane, x, 8);
    const long long total = 100000;
    double sum = 0.0;
    std::vector<long long> obs(8, 0);
    for (long long s = 0; s < total; ++s) {
        const auto p = sample_plane_partition(spec, static_cast<std::uint64_t>(s));
        sum += static_cast<double>(p.volume);
        ++obs[static_cast<std::size_t>(std::min<long long>(p.volume, 7))];
    }
    double mean = 0.0;
    for (int l = 1; l < 200; ++l) mean += l * l * std::pow(x, l) / (1 - std::pow(x, l));
    REQUIRE_THAT(expected_volume(x, Model::plane), WithinRel(mean, 1e-12));
    const double sigma = std::sqrt(volume_variance(x, Model::plane) / total);
    REQUIRE(std::abs(sum / total - mean) < 3 * sigma);

    const auto pi3 = skyscraper::macmahon_series_infinite(6);
    double norm_factor = 1.0;
    for (int l = 1; l < 200; ++l) norm_factor *= std::pow(1.0 - std::pow(x, l), l);
    std::vector<double> probs;
    for (int n = 0; n <= 6; ++n) probs.push_back(pi3[n].convert_to<double>() * std::pow(x, n) * norm_factor);
    REQUIRE(chi_square(obs, probs, total) < chi_square_cutoff(7));
}

TEST_CASE("limit shape experiment") {
    std::vector<double> medians;
    LimitShapeStats last;
    for (long long n : {400LL, 2500LL, 10000LL}) {
        last = limit_shape_experiment(n, 200, 2026);
        REQUIRE(last.distances.size() == 200);
        REQUIRE_FALSE(last.window_enlarged);
        for (long long v : last.volumes) REQUIRE(std::abs(v - n) <= 0.1 * n);
        medians.push_back(last.median);
    }
    REQUIRE(medians[0] > medians[1]);
    REQUIRE(medians[1] > medians[2]);
    REQUIRE_THAT(last.diagonal_mean, WithinAbs(std::sqrt(6.0) * std::log(2.0) / kPi, 0.02));

    const auto a = limit_shape_experiment(400, 20, 7);
    const auto b = limit_shape_experiment(400, 20, 7, 0.1, 3);
    REQUIRE(a.distances == b.distances);
    REQUIRE(a.volumes == b.volumes);
    REQUIRE_THROWS_AS(limit_shape_experiment(100, 10, 1), InvalidParameter);
}
