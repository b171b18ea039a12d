#pragma once

// Wulff bodies from direction fields, surface/droplet functionals, the saddle droplet,
// pyramid-inequality and Brunn-Minkowski checks, and facet construction.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "wulff/convex/direction_field.hpp"
#include "wulff/convex/geometry.hpp"
#include "wulff/convex/hausdorff.hpp"
#include "wulff/core/errors.hpp"

namespace wulff::convex {

/// The degenerate droplet: zero volume, zero energy.
struct Star {
    bool operator==(const Star&) const = default;
};

/// Closed droplet boundary: polygon (2D), triangle mesh (3D) or the degenerate point.
class DropletSurface {
public:
    static DropletSurface star() { return DropletSurface(Star{}, 0.0); }

    /// Simple closed polygon; clockwise input is reoriented.
    static DropletSurface polygon(Polygon p) {
        if (p.size() >= 2 && p.front() == p.back()) p.pop_back();
        if (p.size() < 3) throw InvalidParameter("a polygon droplet needs at least three vertices");
        if (!is_simple(p)) throw InvalidParameter("self-intersecting polygon");
        return convex_polygon(std::move(p));
    }

    /// Polygon known to be simple (output of half-plane clipping); skips the O(n^2) test.
    static DropletSurface convex_polygon(Polygon p) {
        double a = signed_area(p);
        if (a < 0) {
            std::reverse(p.begin(), p.end());
            a = -a;
        }
        return DropletSurface(std::move(p), a);
    }

    static DropletSurface mesh(Mesh m) {
        double v = m.volume();
        if (v < 0) {
            for (auto& t : m.triangles) std::swap(t[1], t[2]);
            v = -v;
        }
        return DropletSurface(std::move(m), v);
    }

    bool is_star() const { return std::holds_alternative<Star>(shape_); }
    /// 2 or 3; the degenerate droplet reports 0.
    int ambient_dim() const { return is_star() ? 0 : std::holds_alternative<Polygon>(shape_) ? 2 : 3; }
    const Polygon& polygon() const { return std::get<Polygon>(shape_); }
    const Mesh& mesh() const { return std::get<Mesh>(shape_); }
    double volume() const { return volume_; }

    /// Polygon vertices with the first repeated at the end.
    std::vector<Vec2> closed_boundary() const {
        std::vector<Vec2> out = polygon();
        if (!out.empty()) out.push_back(out.front());
        return out;
    }

    DropletSurface scaled(double lambda) const {
        if (!(lambda > 0.0)) throw InvalidParameter("scale factor must be positive");
        if (is_star()) return star();
        if (ambient_dim() == 2) {
            Polygon p = polygon();
            for (auto& v : p) v = v * lambda;
            return DropletSurface(std::move(p), volume_ * lambda * lambda);
        }
        Mesh m = mesh();
        for (auto& v : m.vertices) v = v * lambda;
        return DropletSurface(std::move(m), volume_ * lambda * lambda * lambda);
    }

private:
    using Shape = std::variant<Star, Polygon, Mesh>;
    DropletSurface(Shape s, double volume) : shape_(std::move(s)), volume_(volume) {}

    Shape shape_;
    double volume_;
};

struct HalfPlane {
    Vec2 normal;
    double offset;
};

struct HalfSpace {
    Vec3 normal;
    double offset;
};

/// Intersection of half-spaces {x : (x, n) <= offset} together with its extracted boundary.
class SupportPolytope {
public:
    static SupportPolytope from_half_planes(std::vector<HalfPlane> planes) {
        if (planes.empty()) throw InvalidParameter("no half-planes");
        std::vector<Vec2> normals;
        std::vector<double> offsets;
        for (const auto& h : planes) {
            normals.push_back(h.normal);
            offsets.push_back(h.offset);
        }
        Polygon poly = half_plane_intersection(normals, offsets);
        SupportPolytope p;
        p.dim_ = 2;
        p.planes2_ = std::move(planes);
        p.boundary_ = DropletSurface::convex_polygon(std::move(poly));
        return p;
    }

    static SupportPolytope from_half_spaces(std::vector<HalfSpace> planes) {
        if (planes.empty()) throw InvalidParameter("no half-spaces");
        double reach = 0.0;
        for (const auto& h : planes) reach = std::max(reach, std::abs(h.offset));
        const double box = 4.0 * reach + 1.0;
        ConvexPolyhedron poly = ConvexPolyhedron::cube(box);
        for (const auto& h : planes) poly.clip(h.normal, h.offset);
        Mesh m = poly.triangulate();
        for (const Vec3& v : m.vertices) {
            if (std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}) > box * (1.0 - 1e-12)) {
                throw InvalidParameter("half-space intersection is unbounded");
            }
        }
        SupportPolytope p;
        p.dim_ = 3;
        p.planes3_ = std::move(planes);
        p.boundary_ = DropletSurface::mesh(std::move(m));
        return p;
    }

    int ambient_dim() const { return dim_; }
    const std::vector<HalfPlane>& half_planes() const { return planes2_; }
    const std::vector<HalfSpace>& half_spaces() const { return planes3_; }
    const DropletSurface& boundary() const { return boundary_; }
    double volume() const { return boundary_.volume(); }

    /// max over the body of (x, n)
    double support(Vec2 n) const {
        double h = -std::numeric_limits<double>::infinity();
        for (const Vec2& v : boundary_.polygon()) h = std::max(h, dot(v, n));
        return h;
    }

    /// Largest violation of (x, n) <= offset over boundary vertices.
    double max_violation() const {
        double worst = -std::numeric_limits<double>::infinity();
        if (dim_ == 2) {
            for (const Vec2& v : boundary_.polygon())
                for (const auto& h : planes2_) worst = std::max(worst, dot(v, h.normal) - h.offset);
        } else {
            for (const Vec3& v : boundary_.mesh().vertices)
                for (const auto& h : planes3_) worst = std::max(worst, dot(v, h.normal) - h.offset);
        }
        return worst;
    }

private:
    SupportPolytope() : boundary_(DropletSurface::star()) {}

    int dim_ = 2;
    std::vector<HalfPlane> planes2_;
    std::vector<HalfSpace> planes3_;
    DropletSurface boundary_;
};

inline constexpr int kDefaultResolution2D = 3600;
inline constexpr int kDefaultIcosphereLevel = 4;
inline constexpr int kMaxIcosphereLevel = 6;

/// Wulff body {x : (x, n) <= tau(n)} over sampled directions: `resolution` uniform angles in 2D,
/// icosphere subdivision level `resolution` in 3D.
inline SupportPolytope wulff_body(const DirectionField& tau, int resolution) {
    tau.validate();
    if (tau.ambient_dim() == 2) {
        if (resolution < 8) throw InvalidParameter("2D resolution must be >= 8 angles");
        std::vector<HalfPlane> planes;
        planes.reserve(static_cast<std::size_t>(resolution));
        for (int k = 0; k < resolution; ++k) {
            const Vec2 n = from_angle(2.0 * std::numbers::pi * k / resolution);
            const double t = tau(n);
            if (!(t > 0.0)) throw RejectedInput("surface tension sample is not positive");
            planes.push_back({n, t});
        }
        return SupportPolytope::from_half_planes(std::move(planes));
    }
    if (resolution < 1 || resolution > kMaxIcosphereLevel) {
        throw InvalidParameter("3D resolution is an icosphere level in [1, 6]");
    }
    std::vector<HalfSpace> planes;
    for (const Vec3& n : icosphere_directions(resolution)) {
        const double t = tau(n);
        if (!(t > 0.0)) throw RejectedInput("surface tension sample is not positive");
        planes.push_back({n, t});
    }
    return SupportPolytope::from_half_spaces(std::move(planes));
}

inline SupportPolytope wulff_body(const DirectionField& tau) {
    return wulff_body(tau, tau.ambient_dim() == 2 ? kDefaultResolution2D : kDefaultIcosphereLevel);
}

/// Boundary elements with (near) zero measure, which surface_energy skips.
inline std::size_t count_degenerate_elements(const DropletSurface& m) {
    if (m.is_star()) return 0;
    std::size_t n = 0;
    if (m.ambient_dim() == 2) {
        const Polygon& p = m.polygon();
        for (std::size_t i = 0; i < p.size(); ++i) n += norm(p[(i + 1) % p.size()] - p[i]) <= 1e-15;
    } else {
        const Mesh& mesh = m.mesh();
        for (const auto& t : mesh.triangles) {
            const Vec3 a = mesh.vertices[static_cast<std::size_t>(t[0])];
            const Vec3 c = cross(mesh.vertices[static_cast<std::size_t>(t[1])] - a, mesh.vertices[static_cast<std::size_t>(t[2])] - a);
            n += norm(c) <= 1e-15;
        }
    }
    return n;
}

/// Sum over boundary elements of tau(face normal) * measure.
inline double surface_energy(const DropletSurface& m, const DirectionField& tau) {
    if (m.is_star()) return 0.0;
    if (m.ambient_dim() != tau.ambient_dim()) throw InvalidParameter("surface and field dimensions differ");
    double e = 0.0;
    if (m.ambient_dim() == 2) {
        const Polygon& p = m.polygon();
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Vec2 a = p[i];
            const Vec2 b = p[(i + 1) % p.size()];
            const double len = norm(b - a);
            if (len <= 1e-15) continue;
            e += tau(outward_normal(a, b)) * len;
        }
        return e;
    }
    const Mesh& mesh = m.mesh();
    for (const auto& t : mesh.triangles) {
        const Vec3 a = mesh.vertices[static_cast<std::size_t>(t[0])];
        const Vec3 c = cross(mesh.vertices[static_cast<std::size_t>(t[1])] - a, mesh.vertices[static_cast<std::size_t>(t[2])] - a);
        const double twice_area = norm(c);
        if (twice_area <= 1e-15) continue;
        e += tau(c * (1.0 / twice_area)) * 0.5 * twice_area;
    }
    return e;
}

inline double enclosed_volume(const DropletSurface& m) { return m.volume(); }

/// |vol(W) - energy(W)/(d+1)| / vol(W)
inline double volume_identity_check(const DirectionField& tau, int resolution) {
    const SupportPolytope w = wulff_body(tau, resolution);
    const double vol = w.volume();
    const double e = surface_energy(w.boundary(), tau);
    return std::abs(vol - e / tau.ambient_dim()) / vol;
}

/// The dilate of W_tau enclosing volume q.
inline DropletSurface scaled_minimizer(const DirectionField& tau, double q, int resolution) {
    if (!(q > 0.0)) throw InvalidParameter("target volume must be positive");
    const SupportPolytope w = wulff_body(tau, resolution);
    const int dp1 = tau.ambient_dim();
    const double lambda = std::pow(q * dp1 / surface_energy(w.boundary(), tau), 1.0 / dp1);
    return w.boundary().scaled(lambda);
}

inline DropletSurface scaled_minimizer(const DirectionField& tau, double q) {
    return scaled_minimizer(tau, q, tau.ambient_dim() == 2 ? kDefaultResolution2D : kDefaultIcosphereLevel);
}

/// energy(M) - m_star * h * vol(M)
inline double droplet_energy(const DropletSurface& m, const DirectionField& tau, double h, double m_star = 1.0) {
    if (m.is_star()) return 0.0;
    return surface_energy(m, tau) - m_star * h * m.volume();
}

struct SaddleDroplet {
    DropletSurface surface;
    double phi = 0.0;
    /// dilation factor r* = d / (h m*) applied to W_tau
    double radius = 0.0;
    /// |dPhi/dr| * r* / |Phi| at r*, by central differences
    double relative_gradient = 0.0;
    /// dPhi/dr > 0 below r* and < 0 above
    bool derivative_changes_sign = false;
};

/// The non-trivial critical point (d/(h m*)) W_tau of the droplet functional, with its value
/// (1/(d+1)) (d/(h m*))^d energy(W_tau) and a finite-difference stationarity check along dilations.
inline SaddleDroplet saddle_droplet(const DirectionField& tau, double h, double m_star, int resolution) {
    if (!(h > 0.0)) throw InvalidParameter("field h must be positive");
    if (!(m_star > 0.0)) throw InvalidParameter("m_star must be positive");
    const SupportPolytope w = wulff_body(tau, resolution);
    const int d = tau.surface_dim();
    const double energy = surface_energy(w.boundary(), tau);
    SaddleDroplet s{w.boundary().scaled(d / (h * m_star)), 0.0, d / (h * m_star), 0.0, false};
    s.phi = std::pow(s.radius, d) * energy / (d + 1);

    auto phi_at = [&](double r) { return droplet_energy(w.boundary().scaled(r), tau, h, m_star); };
    auto dphi = [&](double r) {
        const double step = 1e-4 * r;
        return (phi_at(r + step) - phi_at(r - step)) / (2.0 * step);
    };
    s.relative_gradient = std::abs(dphi(s.radius)) * s.radius / std::abs(s.phi);
    s.derivative_changes_sign = dphi(0.9 * s.radius) > 0.0 && dphi(1.1 * s.radius) < 0.0;
    return s;
}

inline SaddleDroplet saddle_droplet(const DirectionField& tau, double h, double m_star = 1.0) {
    return saddle_droplet(tau, h, m_star, tau.ambient_dim() == 2 ? kDefaultResolution2D : kDefaultIcosphereLevel);
}

struct Triangle {
    Vec2 a, b, c;
    double lhs = 0.0;  // |AB| tau(n_AB) + |BC| tau(n_BC)
    double rhs = 0.0;  // |CA| tau(n_CA)
};

/// Samples triangles and returns those violating |AB|tau(n_AB) + |BC|tau(n_BC) >= |CA|tau(n_CA).
/// Half the trials are nearly flat (B close to segment CA), where violations concentrate.
inline std::vector<Triangle> pyramid_inequality_check(const DirectionField& tau, int trials, std::uint64_t seed) {
    if (tau.ambient_dim() != 2) throw InvalidParameter("pyramid check is implemented for planar fields");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto weighted = [&](Vec2 p, Vec2 q) {
        const Vec2 e = q - p;
        const double len = norm(e);
        return len > 0.0 ? len * tau(Vec2{-e.y / len, e.x / len}) : 0.0;
    };
    std::vector<Triangle> bad;
    for (int t = 0; t < trials; ++t) {
        Triangle tri;
        tri.a = {u(rng), u(rng)};
        tri.c = {u(rng), u(rng)};
        if (t % 2 == 0) {
            tri.b = {u(rng), u(rng)};
        } else {
            const Vec2 ca = tri.a - tri.c;
            const Vec2 perp{-ca.y, ca.x};
            const double along = 0.5 + 0.5 * u(rng);
            tri.b = tri.c + ca * along + perp * (0.05 * u(rng));
        }
        tri.lhs = weighted(tri.a, tri.b) + weighted(tri.b, tri.c);
        tri.rhs = weighted(tri.c, tri.a);
        if (tri.lhs < tri.rhs - 1e-12 * (1.0 + tri.rhs)) bad.push_back(tri);
    }
    return bad;
}

/// A + B via support-function addition over the edge normals of both bodies plus a uniform fan.
inline SupportPolytope minkowski_sum(const SupportPolytope& a, const SupportPolytope& b) {
    if (a.ambient_dim() != 2 || b.ambient_dim() != 2) throw InvalidParameter("minkowski_sum is planar");
    std::vector<Vec2> dirs;
    for (const auto* body : {&a, &b}) {
        const Polygon& p = body->boundary().polygon();
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (norm(p[(i + 1) % p.size()] - p[i]) > 1e-14) dirs.push_back(outward_normal(p[i], p[(i + 1) % p.size()]));
        }
    }
    for (int k = 0; k < 720; ++k) dirs.push_back(from_angle(2.0 * std::numbers::pi * k / 720));
    std::sort(dirs.begin(), dirs.end(), [](Vec2 x, Vec2 y) { return std::atan2(x.y, x.x) < std::atan2(y.y, y.x); });
    std::vector<HalfPlane> planes;
    planes.reserve(dirs.size());
    for (const Vec2& n : dirs) planes.push_back({n, a.support(n) + b.support(n)});
    return SupportPolytope::from_half_planes(std::move(planes));
}

/// |A+B|^{1/2} - |A|^{1/2} - |B|^{1/2}; non-negative up to rounding for convex A, B.
inline double brunn_minkowski_check(const SupportPolytope& a, const SupportPolytope& b) {
    const SupportPolytope sum = minkowski_sum(a, b);
    return std::sqrt(sum.volume()) - std::sqrt(a.volume()) - std::sqrt(b.volume());
}

/// Facet of a Wulff shape at a cusp n0: the planar Wulff body of the one-sided derivative
/// field tau'(nu) over the unit circle of the tangent plane at n0. Returns nullopt when tau'
/// is not positive everywhere (no cusp, no facet). Throws RejectedInput when tau' fails the
/// pyramid inequality.
inline std::optional<SupportPolytope> facet_shape(const DirectionField& tangent_derivative, Vec3 n0,
                                                  int resolution = kDefaultResolution2D) {
    if (tangent_derivative.ambient_dim() != 2) throw InvalidParameter("tangent derivative lives on a circle");
    if (std::abs(norm(n0) - 1.0) > 1e-9) throw InvalidParameter("n0 must be a unit vector");
    for (int k = 0; k < resolution; ++k) {
        if (!(tangent_derivative.at_angle(2.0 * std::numbers::pi * k / resolution) > kGeomEps)) return std::nullopt;
    }
    if (!pyramid_inequality_check(tangent_derivative, 4000, 0x5eed).empty()) {
        throw RejectedInput(tangent_derivative.name() + " violates the pyramid inequality (not a support function)");
    }
    return wulff_body(tangent_derivative, resolution);
}

}  // namespace wulff::convex
