#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "wulff/convex/wulff.hpp"

using namespace wulff;
using namespace wulff::convex;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

DropletSurface unit_square() { return DropletSurface::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon circle(double r, int n, Vec2 c = {}) {
    Polygon p;
    for (int k = 0; k < n; ++k) p.push_back(c + from_angle(2 * kPi * k / n) * r);
    return p;
}

std::vector<Vec2> closed(Polygon p) {
    p.push_back(p.front());
    return p;
}

// 1 - 0.9 |n_1|: even and positive, but its homogeneous extension has a concave kink.
DirectionField kinked_field() {
    return DirectionField(2, [](std::span<const double> n) { return 1.0 - 0.9 * std::abs(n[0]); }, "kinked", true, 0.09);
}

std::vector<DirectionField> shipped_fields() {
    return {DirectionField::isotropic(2), DirectionField::l1(2), DirectionField::cos4()};
}

Polygon random_star(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(2 * kPi * u(rng));
    std::sort(angles.begin(), angles.end());
    Polygon p;
    for (double a : angles) p.push_back(from_angle(a) * (0.3 + 1.7 * u(rng)));
    return p;
}

Vec2 centroid(const Polygon& p) {
    double a = 0, cx = 0, cy = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec2 u = p[i], v = p[(i + 1) % p.size()];
        const double c = cross(u, v);
        a += c;
        cx += (u.x + v.x) * c;
        cy += (u.y + v.y) * c;
    }
    return {cx / (3 * a), cy / (3 * a)};
}

}  // namespace

TEST_CASE("direction fields validate positivity and evenness") {
    for (const auto& f : shipped_fields()) REQUIRE_NOTHROW(f.validate());
    REQUIRE_NOTHROW(kinked_field().validate());
    DirectionField odd(2, [](std::span<const double> n) { return 1.0 + 0.5 * n[0]; }, "odd", true, 0.1);
    REQUIRE_THROWS_AS(odd.validate(), RejectedInput);
    DirectionField negative(2, [](std::span<const double> n) { return n[0]; }, "neg", false, 0.0);
    REQUIRE_THROWS(negative.validate());
}

TEST_CASE("wulff_body of the isotropic field approximates the disk") {
    const auto w = wulff_body(DirectionField::isotropic(2), 360);
    REQUIRE_THAT(w.volume(), WithinAbs(kPi, 1e-3));
    REQUIRE(w.max_violation() <= 1e-9);
    const auto closed_boundary = w.boundary().closed_boundary();
    REQUIRE(closed_boundary.front() == closed_boundary.back());
}

TEST_CASE("wulff_body of the l1 field is the square") {
    for (int res : {4 * 2, 3600}) {
        const auto w = wulff_body(DirectionField::l1(2), res);
        REQUIRE_THAT(w.volume(), WithinAbs(4.0, 1e-9));
        REQUIRE_THAT(surface_energy(w.boundary(), DirectionField::l1(2)), WithinAbs(8.0, 1e-9));
        for (const Vec2& v : w.boundary().polygon()) {
            REQUIRE_THAT(std::max(std::abs(v.x), std::abs(v.y)), WithinAbs(1.0, 1e-9));
        }
    }
    // Four axis half-planes alone already cut out the square.
    std::vector<HalfPlane> axes = {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}};
    REQUIRE_THAT(SupportPolytope::from_half_planes(axes).volume(), WithinAbs(4.0, 1e-12));
}

TEST_CASE("wulff_body rejects bad inputs") {
    REQUIRE_THROWS_AS(wulff_body(DirectionField::isotropic(2), 7), InvalidParameter);
    REQUIRE_THROWS_AS(wulff_body(DirectionField::isotropic(3), 0), InvalidParameter);
    DirectionField zero(2, [](std::span<const double>) { return 0.0; }, "zero", true, 0.0);
    REQUIRE_THROWS_AS(wulff_body(zero, 64), RejectedInput);
    REQUIRE_THROWS_AS(SupportPolytope::from_half_planes({{{1, 0}, 1}, {{0, 1}, 1}}), InvalidParameter);
}

TEST_CASE("3D isotropic Wulff body is a watertight ball") {
    const auto w = wulff_body(DirectionField::isotropic(3), 4);
    REQUIRE_THAT(w.volume(), WithinAbs(4 * kPi / 3, 1e-2));
    const Mesh& m = w.boundary().mesh();
    REQUIRE(m.is_watertight());
    REQUIRE(m.euler_characteristic() == 2);
    REQUIRE(w.max_violation() <= 1e-9);
    REQUIRE(count_degenerate_elements(w.boundary()) == 0);
    REQUIRE_THAT(surface_energy(w.boundary(), DirectionField::isotropic(3)), WithinAbs(4 * kPi, 5e-2));
}

TEST_CASE("3D l1 Wulff body is the cube") {
    const auto w = wulff_body(DirectionField::l1(3), 2);
    REQUIRE_THAT(w.volume(), WithinAbs(8.0, 1e-9));
    REQUIRE(w.boundary().mesh().euler_characteristic() == 2);
    REQUIRE_THAT(surface_energy(w.boundary(), DirectionField::l1(3)), WithinAbs(24.0, 1e-9));
}

TEST_CASE("surface_energy on simple polygons") {
    REQUIRE_THAT(surface_energy(unit_square(), DirectionField::isotropic(2)), WithinAbs(4.0, 1e-14));
    REQUIRE_THAT(surface_energy(unit_square(), DirectionField::l1(2)), WithinAbs(4.0, 1e-14));
    const auto w = wulff_body(DirectionField::isotropic(2), 3600);
    REQUIRE_THAT(surface_energy(w.boundary(), DirectionField::isotropic(2)), WithinAbs(2 * kPi, 1e-4));
    REQUIRE(surface_energy(DropletSurface::star(), DirectionField::isotropic(2)) == 0.0);
}

TEST_CASE("enclosed_volume and polygon validation") {
    REQUIRE_THAT(enclosed_volume(unit_square()), WithinAbs(1.0, 1e-15));
    REQUIRE(enclosed_volume(DropletSurface::star()) == 0.0);
    // clockwise input is reoriented
    REQUIRE_THAT(enclosed_volume(DropletSurface::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}})), WithinAbs(1.0, 1e-15));
    REQUIRE_THROWS_AS(DropletSurface::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidParameter);
    REQUIRE_THAT(enclosed_volume(wulff_body(DirectionField::l1(2), 64).boundary()), WithinAbs(4.0, 1e-9));
}

TEST_CASE("volume identity holds for the shipped fields") {
    REQUIRE(volume_identity_check(DirectionField::isotropic(2), 3600) < 1e-6);
    REQUIRE(volume_identity_check(DirectionField::l1(2), 3600) < 1e-9);
    REQUIRE(volume_identity_check(DirectionField::cos4(), 7200) < 1e-4);
    for (const auto& f : shipped_fields()) REQUIRE(volume_identity_check(f, 3600) < 1e-4);
}

TEST_CASE("scaled_minimizer hits the target volume") {
    const auto iso = DirectionField::isotropic(2);
    const auto w = wulff_body(iso, 3600);
    const auto same = scaled_minimizer(iso, w.volume(), 3600);
    REQUIRE_THAT(same.polygon()[0].x, WithinAbs(w.boundary().polygon()[0].x, 1e-12));
    REQUIRE_THAT(scaled_minimizer(iso, kPi).volume(), WithinAbs(kPi, 1e-3));
    const auto big = scaled_minimizer(iso, 4 * kPi);
    REQUIRE_THAT(big.volume(), WithinRel(4 * kPi, 1e-9));
    REQUIRE_THAT(surface_energy(big, iso), WithinAbs(4 * kPi, 1e-3));
    REQUIRE_THROWS_AS(scaled_minimizer(iso, 0.0), InvalidParameter);
}

TEST_CASE("droplet_energy") {
    const auto iso = DirectionField::isotropic(2);
    REQUIRE(droplet_energy(DropletSurface::star(), iso, 1.0) == 0.0);
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
        const auto c = DropletSurface::convex_polygon(circle(r, 20000));
        REQUIRE_THAT(droplet_energy(c, iso, 1.0, 1.0), WithinAbs(2 * kPi * r - kPi * r * r, 1e-6 * (1 + r * r)));
    }
    const auto c2 = DropletSurface::convex_polygon(circle(2.0, 20000));
    REQUIRE_THAT(droplet_energy(c2, iso, 1.0), WithinAbs(0.0, 1e-6));
    REQUIRE_THAT(droplet_energy(c2, iso, 0.5, 2.0), WithinAbs(0.0, 1e-6));
}

TEST_CASE("saddle_droplet values and stationarity") {
    const auto iso = DirectionField::isotropic(2);
    auto s1 = saddle_droplet(iso, 1.0);
    REQUIRE_THAT(s1.radius, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(s1.phi, WithinAbs(kPi, 1e-5));
    REQUIRE_THAT(s1.surface.volume(), WithinAbs(kPi, 1e-5));
    auto s2 = saddle_droplet(iso, 2.0);
    REQUIRE_THAT(s2.radius, WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(s2.phi, WithinAbs(kPi / 2, 1e-5));
    auto sq = saddle_droplet(DirectionField::l1(2), 1.0);
    REQUIRE_THAT(sq.phi, WithinAbs(4.0, 1e-9));
    REQUIRE_THAT(sq.surface.volume(), WithinAbs(4.0, 1e-9));
    for (const auto& f : shipped_fields()) {
        for (double h : {0.3, 1.0, 2.0}) {
            for (double m : {1.0, 0.7}) {
                const auto s = saddle_droplet(f, h, m);
                REQUIRE(s.relative_gradient < 1e-6);
                REQUIRE(s.derivative_changes_sign);
                REQUIRE_THAT(s.phi, WithinRel(droplet_energy(s.surface, f, h, m), 1e-9));
            }
        }
    }
    const auto s3 = saddle_droplet(DirectionField::isotropic(3), 1.0);
    REQUIRE_THAT(s3.radius, WithinAbs(2.0, 1e-15));
    REQUIRE(s3.relative_gradient < 1e-6);
    REQUIRE(s3.derivative_changes_sign);
    REQUIRE_THROWS_AS(saddle_droplet(iso, 0.0), InvalidParameter);
    REQUIRE_THROWS_AS(saddle_droplet(iso, -1.0), InvalidParameter);
}

TEST_CASE("hausdorff distance examples") {
    const auto disk = closed(circle(1.0, 3600));
    REQUIRE(hausdorff_distance(disk, disk) == 0.0);
    REQUIRE_THAT(hausdorff_distance(disk, closed(circle(1.1, 3600))), WithinAbs(0.1, 1e-6));
    const std::vector<Vec2> square = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    REQUIRE_THAT(hausdorff_distance(square, disk), WithinAbs(std::sqrt(2.0) - 1.0, 1e-4));
    REQUIRE_THROWS_AS(hausdorff_distance({}, disk), InvalidParameter);
}

TEST_CASE("pyramid inequality sampling") {
    REQUIRE(pyramid_inequality_check(DirectionField::isotropic(2), 4000, 1).empty());
    REQUIRE(pyramid_inequality_check(DirectionField::l1(2), 4000, 2).empty());
    REQUIRE(pyramid_inequality_check(DirectionField::cos4(0.05), 4000, 3).empty());
    const auto bad = pyramid_inequality_check(kinked_field(), 4000, 4);
    REQUIRE_FALSE(bad.empty());
    for (const auto& t : bad) REQUIRE(t.lhs < t.rhs);

    // Hand-built witness: two nearly horizontal edges whose normals straddle the kink.
    const auto f = kinked_field();
    auto weight = [&](Vec2 e) { return norm(e) * f(Vec2{-e.y / norm(e), e.x / norm(e)}); };
    const Vec2 ab{1.0, 0.05}, bc{1.0, -0.05};
    REQUIRE(weight(ab) + weight(bc) < weight(ab + bc));
}

TEST_CASE("brunn-minkowski margins") {
    const auto square = SupportPolytope::from_half_planes({{{1, 0}, 0.5}, {{0, 1}, 0.5}, {{-1, 0}, 0.5}, {{0, -1}, 0.5}});
    REQUIRE_THAT(brunn_minkowski_check(square, square), WithinAbs(0.0, 1e-9));
    const auto disk = wulff_body(DirectionField::isotropic(2), 3600);
    const auto disk2 = wulff_body(DirectionField::isotropic(2, 2.0), 3600);
    REQUIRE(brunn_minkowski_check(square, disk) > 1e-3);
    REQUIRE_THAT(brunn_minkowski_check(disk, disk2), WithinAbs(0.0, 1e-6));
}

TEST_CASE("facet_shape at a cusp") {
    const Vec3 n0{0, 0, 1};
    const auto disk = facet_shape(DirectionField::isotropic(2, 0.7), n0);
    REQUIRE(disk.has_value());
    REQUIRE_THAT(disk->volume(), WithinAbs(kPi * 0.49, 1e-3));
    const auto sq = facet_shape(DirectionField::l1(2), n0);
    REQUIRE(sq.has_value());
    REQUIRE_THAT(sq->volume(), WithinAbs(4.0, 1e-9));
    DirectionField zero_somewhere(2, [](std::span<const double> n) { return std::abs(n[0]); }, "abs_n1", true, 0.0);
    REQUIRE_FALSE(facet_shape(zero_somewhere, n0).has_value());
    REQUIRE_THROWS_AS(facet_shape(kinked_field(), n0), RejectedInput);
}

TEST_CASE("minimality of the scaled Wulff shape among random star polygons") {
    std::mt19937_64 rng(20261019);
    for (const auto& f : shipped_fields()) {
        const auto w = wulff_body(f, 3600);
        const double base_energy = surface_energy(w.boundary(), f);
        for (int i = 0; i < 200; ++i) {
            const Polygon p = random_star(rng, 5 + i % 40);
            if (!is_simple(p)) continue;
            const auto m = DropletSurface::polygon(p);
            const double q = m.volume();
            const double lambda = std::sqrt(q / w.volume());
            const double best = lambda * base_energy;
            REQUIRE(surface_energy(m, f) >= best - 1e-3 * best);
        }
    }
}

TEST_CASE("stability: energy deficit dominates squared Hausdorff distance") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& f : {DirectionField::isotropic(2), DirectionField::cos4()}) {
        const auto w = wulff_body(f, 720);
        const Polygon& base = w.boundary().polygon();
        const double e0 = surface_energy(w.boundary(), f);
        double min_ratio = std::numeric_limits<double>::infinity();
        std::vector<double> mean_deficit;
        for (double delta : {0.0125, 0.025, 0.05}) {
            double sum = 0.0;
            for (int trial = 0; trial < 20; ++trial) {
                std::array<double, 4> amp{}, phase{};
                for (int k = 0; k < 4; ++k) {
                    amp[k] = u(rng);
                    phase[k] = kPi * u(rng);
                }
                Polygon p;
                for (const Vec2& v : base) {
                    const double th = std::atan2(v.y, v.x);
                    double r = 0.0;
                    for (int k = 0; k < 4; ++k) r += amp[k] * std::cos((k + 2) * th + phase[k]);
                    p.push_back(v * (1.0 + delta * r / 4.0));
                }
                auto m = DropletSurface::polygon(p);
                m = m.scaled(std::sqrt(w.volume() / m.volume()));
                Polygon shifted = m.polygon();
                const Vec2 c = centroid(shifted);
                for (auto& v : shifted) v = v - c;
                const double deficit = surface_energy(m, f) - e0;
                const double rho = hausdorff_distance(closed(shifted), closed(base), 2e-3);
                REQUIRE(deficit >= 0.0);
                min_ratio = std::min(min_ratio, deficit / (rho * rho));
                sum += deficit;
            }
            mean_deficit.push_back(sum / 20);
        }
        REQUIRE(min_ratio > 0.0);
        REQUIRE(mean_deficit[0] < mean_deficit[1]);
        REQUIRE(mean_deficit[1] < mean_deficit[2]);
    }
}

TEST_CASE("scaling covariance of wulff_body") {
    for (const auto& f : shipped_fields()) {
        const auto w = wulff_body(f, 720);
        for (double lambda : {0.5, 2.0, 10.0}) {
            const auto wl = wulff_body(f.scaled(lambda), 720);
            const auto& a = w.boundary().polygon();
            const auto& b = wl.boundary().polygon();
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(norm(b[i] - a[i] * lambda) < 1e-9);
        }
    }
}

TEST_CASE("step-one inequality for random convex polygons") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& f : shipped_fields()) {
        const auto k = wulff_body(f, 720);
        for (int i = 0; i < 50; ++i) {
            std::vector<HalfPlane> planes;
            const int n = 3 + i % 8;
            const double spin = 2 * kPi * u(rng);
            for (int j = 0; j < n; ++j) planes.push_back({from_angle(spin + 2 * kPi * (j + 0.4 * u(rng)) / n), 0.3 + u(rng)});
            const auto body = SupportPolytope::from_half_planes(planes);
            const double eps = 1e-3;
            std::vector<HalfPlane> scaled_k;
            for (const auto& h : k.half_planes()) scaled_k.push_back({h.normal, eps * h.offset});
            const auto sum = minkowski_sum(body, SupportPolytope::from_half_planes(scaled_k));
            const double energy = surface_energy(body.boundary(), f);
            REQUIRE((sum.volume() - body.volume()) / eps <= energy + 1e-2 * energy);
        }
    }
}
