#pragma once

// Dual (maximizing) Wulff problem over monotone planar graphs: staircase entropy, the
// dual body K^> = {x : (x, n) >= eta(n)}, its functional, the normalized maximizer,
// the limit curve of random partitions and the skyscraper facet curve.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wulff/convex/geometry.hpp"
#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"
#include "wulff/partition/partition.hpp"

namespace wulff::dual {

using convex::Polygon;

/// -(n1 ln(n1/(n1+n2)) + n2 ln(n2/(n1+n2))), with 0 ln 0 = 0.
inline double entropy_density(Vec2 n) {
    if (n.x < 0.0 || n.y < 0.0) throw InvalidParameter("entropy_density needs a direction in the closed quadrant");
    const double s = n.x + n.y;
    if (s <= 0.0) throw InvalidParameter("entropy_density of the zero vector");
    auto term = [s](double a) { return a > 0.0 ? a * std::log(a / s) : 0.0; };
    return -(term(n.x) + term(n.y));
}

/// Non-negative field on the quarter circle, parametrized by theta in [0, pi/2].
class OctantField {
public:
    using Evaluator = std::function<double(Vec2)>;

    OctantField(Evaluator f, std::string name, bool decays = true)
        : f_(std::move(f)), name_(std::move(name)), decays_(decays) {}

    double operator()(Vec2 n) const {
        if (n.x < -1e-12 || n.y < -1e-12) throw ContractViolation(name_ + " evaluated outside the quadrant");
        return f_(Vec2{std::max(n.x, 0.0), std::max(n.y, 0.0)});
    }
    double at_angle(double theta) const { return (*this)(from_angle(theta)); }
    const std::string& name() const { return name_; }
    bool decays() const { return decays_; }

    OctantField scaled(double lambda) const {
        auto f = f_;
        return OctantField([f, lambda](Vec2 n) { return lambda * f(n); }, name_, decays_);
    }

    /// Largest sampled value; sets the length scale of the dual body.
    double max_value(int samples = 2048) const {
        double m = 0.0;
        for (int k = 0; k <= samples; ++k) m = std::max(m, at_angle(0.5 * std::numbers::pi * k / samples));
        return m;
    }

    /// Boundary modulus: eta(n) <= 2 delta (1 + ln(1/delta)) at angular distance delta from either axis.
    static double decay_bound(double delta) { return 2.0 * delta * (1.0 + std::log(1.0 / delta)); }

    /// Throws RejectedInput on negative samples or, for decaying fields, on a broken boundary modulus.
    void validate(int samples = 1024) const {
        for (int k = 0; k <= samples; ++k) {
            const double v = at_angle(0.5 * std::numbers::pi * k / samples);
            if (!(v >= 0.0) || !std::isfinite(v)) throw RejectedInput(name_ + ": negative or non-finite value");
        }
        if (!decays_) return;
        const double scale = std::max(max_value(), 1e-300);
        for (double delta = 1e-1; delta >= 1e-8; delta *= 0.1) {
            for (double theta : {delta, 0.5 * std::numbers::pi - delta}) {
                if (at_angle(theta) > scale * decay_bound(delta)) {
                    throw RejectedInput(name_ + ": no decay toward the boundary of the quadrant");
                }
            }
        }
    }

    static OctantField staircase_entropy() { return OctantField(entropy_density, "staircase-entropy"); }
    static OctantField product() {
        return OctantField([](Vec2 n) { return n.x * n.y; }, "product");
    }
    static OctantField constant(double c) {
        return OctantField([c](Vec2) { return c; }, "constant", c == 0.0);
    }

    /// Periodic-free linear interpolation over (angle in [0, pi/2], value) pairs.
    static OctantField tabulated(std::vector<std::pair<double, double>> table, std::string name = "table") {
        if (table.size() < 2) throw InvalidParameter("tabulated field needs at least two rows");
        std::sort(table.begin(), table.end());
        for (const auto& [a, v] : table) {
            if (a < -1e-12 || a > 0.5 * std::numbers::pi + 1e-12) throw InvalidParameter("table angle outside [0, pi/2]");
            if (v < 0.0) throw InvalidParameter("table value is negative");
        }
        return OctantField(
            [table](Vec2 n) {
                const double t = std::atan2(n.y, n.x);
                if (t <= table.front().first) return table.front().second;
                if (t >= table.back().first) return table.back().second;
                auto hi = std::lower_bound(table.begin(), table.end(), std::pair{t, -1.0});
                auto lo = hi - 1;
                const double w = (t - lo->first) / (hi->first - lo->first);
                return lo->second + w * (hi->second - lo->second);
            },
            std::move(name), table.front().second == 0.0 && table.back().second == 0.0);
    }

    static OctantField named(const std::string& name) {
        if (name == "staircase-entropy") return staircase_entropy();
        if (name == "product") return product();
        throw InvalidParameter("unknown octant field: " + name);
    }

private:
    Evaluator f_;
    std::string name_;
    bool decays_;
};

/// Decreasing polyline in [0, R]^2 from (0, y0) to (R, yN); the graph bounds the region below it.
struct MonotoneGraph {
    std::vector<Vec2> points;
    double radius = 0.0;

    /// Area of {0 <= x <= R, 0 <= y <= f(x)}.
    double volume() const {
        double a = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            a += 0.5 * (points[i].x - points[i - 1].x) * (points[i].y + points[i - 1].y);
        }
        return a;
    }

    MonotoneGraph scaled(double lambda) const {
        MonotoneGraph g{points, radius * lambda};
        for (auto& p : g.points) p = p * lambda;
        return g;
    }

    /// Non-negative and non-increasing within tol.
    bool is_monotone(double tol = 1e-12) const {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].y < -tol) return false;
            if (i && (points[i].x < points[i - 1].x - tol || points[i].y > points[i - 1].y + tol)) return false;
        }
        return true;
    }

    /// Linear interpolation, 0 beyond the last point.
    double operator()(double x) const {
        if (points.empty() || x > points.back().x) return 0.0;
        if (x <= points.front().x) return points.front().y;
        auto it = std::lower_bound(points.begin(), points.end(), x, [](Vec2 p, double v) { return p.x < v; });
        const Vec2 b = *it, a = *(it - 1);
        return b.x == a.x ? b.y : a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
    }
};

namespace detail {

/// max over theta of (eta(theta) - x cos theta) / sin theta, clipped to [0, cap].
inline double envelope_height(const OctantField& eta, double x, double cap, const std::vector<double>& thetas) {
    auto value = [&](double t) { return (eta.at_angle(t) - x * std::cos(t)) / std::sin(t); };
    std::vector<double> v(thetas.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        v[i] = value(thetas[i]);
        best = std::max(best, v[i]);
    }
    if (best >= cap) return cap;
    // golden-section refinement around every grid local maximum
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    const std::size_t n = thetas.size();
    for (std::size_t i = 0; i < n; ++i) {
        if ((i > 0 && v[i] < v[i - 1]) || (i + 1 < n && v[i] < v[i + 1])) continue;
        double lo = thetas[i == 0 ? 0 : i - 1];
        double hi = thetas[std::min(i + 1, n - 1)];
        double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
        double fc = value(c), fd = value(d);
        for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - g * (hi - lo);
                fc = value(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + g * (hi - lo);
                fd = value(d);
            }
        }
        best = std::max({best, fc, fd});
    }
    return std::clamp(best, 0.0, cap);
}

/// Angles in (0, pi/2): geometric from 1e-12 up to 0.01 (a quarter of the points), uniform
/// beyond, mirrored about pi/4.
inline std::vector<double> angle_grid(int per_side) {
    std::vector<double> t;
    const double half = 0.25 * std::numbers::pi;
    const int geo = std::max(8, per_side / 4);
    const int uni = std::max(8, per_side - geo);
    for (int k = 0; k < geo; ++k) t.push_back(0.01 * std::pow(1e-10, 1.0 - static_cast<double>(k) / geo));
    for (int k = 0; k < uni; ++k) t.push_back(0.01 + (half - 0.01) * k / uni);
    const std::size_t n = t.size();
    t.push_back(half);
    for (std::size_t k = n; k-- > 0;) t.push_back(0.5 * std::numbers::pi - t[k]);
    return t;
}

/// Abscissae where the boundary is touched by the supporting line of normal theta, for theta
/// on an angle grid (contact point eta n + eta' dn/dtheta), merged with a uniform grid on [0, R].
/// Sampling by contact angle spaces vertices by turning angle, which keeps chords accurate on
/// both the steep and the flat ends of the graph.
inline std::vector<double> abscissa_grid(const OctantField& eta, double radius, int resolution) {
    std::vector<double> xs;
    for (double t : angle_grid(resolution / 2)) {
        const double step = 1e-6 * std::min(t, 0.5 * std::numbers::pi - t);
        const double deriv = (eta.at_angle(t + step) - eta.at_angle(t - step)) / (2.0 * step);
        const double x = eta.at_angle(t) * std::cos(t) - deriv * std::sin(t);
        if (x > 0.0 && x < radius && std::isfinite(x)) xs.push_back(x);
    }
    const int uni = std::max(16, resolution / 4);
    for (int k = 1; k <= uni; ++k) xs.push_back(radius * k / uni);
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs) {
        if (out.empty() || x - out.back() > 1e-13 * radius) out.push_back(x);
    }
    if (out.back() < radius) out.push_back(radius);
    return out;
}

inline MonotoneGraph envelope_graph(const OctantField& eta, double radius, int resolution) {
    const std::vector<double> thetas = angle_grid(256);
    const std::vector<double> xs = abscissa_grid(eta, radius, resolution);
    MonotoneGraph g;
    g.radius = radius;
    g.points.reserve(xs.size() + 1);
    g.points.push_back({0.0, envelope_height(eta, xs.front(), radius, thetas)});
    for (double x : xs) g.points.push_back({x, envelope_height(eta, x, radius, thetas)});
    return g;
}

}  // namespace detail

inline constexpr int kDefaultDualResolution = 8000;
inline constexpr double kRadiusPerScale = 24.0;

/// Boundary of K^> = {x : (x, n) >= eta(n) for n in the quadrant} as the graph of
/// f(x) = sup_n (eta(n) - x n1) / n2, truncated to [0, R]^2. Throws InfiniteVolume when the
/// enclosed area still grows by more than 1e-3 (relative) when R doubles.
inline MonotoneGraph dual_body_graph(const OctantField& eta, int resolution = kDefaultDualResolution,
                                     std::optional<double> radius = std::nullopt) {
    if (resolution < 16) throw InvalidParameter("dual graph resolution must be >= 16");
    for (int k = 0; k <= 256; ++k) {
        if (eta.at_angle(0.5 * std::numbers::pi * k / 256) < 0.0) throw RejectedInput(eta.name() + ": negative value");
    }
    const double scale = eta.max_value();
    if (scale == 0.0) return MonotoneGraph{{{0.0, 0.0}, {radius.value_or(1.0), 0.0}}, radius.value_or(1.0)};
    const double r = radius.value_or(kRadiusPerScale * scale);
    if (!(r > scale)) throw InvalidParameter("truncation radius must exceed the field's scale");
    MonotoneGraph g = detail::envelope_graph(eta, r, resolution);
    const double v2 = detail::envelope_graph(eta, 2.0 * r, resolution).volume();
    if (v2 - g.volume() > 1e-3 * g.volume()) {
        throw InfiniteVolume(eta.name() + ": dual body volume diverges under truncation doubling");
    }
    // the truncation corner at y = R is exempt
    for (std::size_t i = 2; i < g.points.size(); ++i) {
        if (g.points[i - 2].y >= r) continue;
        const Vec2 a = g.points[i - 1] - g.points[i - 2];
        const Vec2 b = g.points[i] - g.points[i - 1];
        const double tol = 1e-9 * norm(a) * norm(b) + 1e-12 * scale * (norm(a) + norm(b));
        if (cross(a, b) < -tol) throw ContractViolation("dual graph is not convex");
    }
    return g;
}

/// Sum over graph segments of eta(segment normal) * length. Normals must lie in the quadrant.
inline double dual_functional(const MonotoneGraph& g, const OctantField& eta) {
    double total = 0.0;
    for (std::size_t i = 1; i < g.points.size(); ++i) {
        const Vec2 e = g.points[i] - g.points[i - 1];
        const double len = norm(e);
        if (len == 0.0) continue;
        if (e.x < -1e-12 * len || e.y > 1e-12 * len) throw ContractViolation("graph segment is not monotone");
        total += eta(Vec2{std::max(-e.y / len, 0.0), std::max(e.x / len, 0.0)}) * len;
    }
    return total;
}

/// Dilate of G_eta enclosing unit area: sqrt(2 / V(G_eta)) G_eta.
inline MonotoneGraph maximizer(const OctantField& eta, int resolution = kDefaultDualResolution) {
    const MonotoneGraph g = dual_body_graph(eta, resolution);
    const double v = dual_functional(g, eta);
    if (!(v > 0.0) || !(g.volume() > 0.0)) throw InvalidParameter(eta.name() + ": dual body has zero volume");
    return g.scaled(std::sqrt(2.0 / v));
}

/// exp(-c x) + exp(-c y) = 1 with c = pi / sqrt 6, sampled symmetrically in the logit of
/// exp(-c x) and clipped where either coordinate drops below 1e-6.
inline std::vector<Vec2> vershik_kerov_curve(int samples) {
    if (samples < 2) throw InvalidParameter("need at least two samples");
    const double c = std::numbers::pi / std::sqrt(6.0);
    // y = 1e-6 where 1 - t = exp(-c 1e-6)
    const double t_min = -std::expm1(-c * 1e-6);
    const double s_max = std::log((1.0 - t_min) / t_min);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double s = s_max * (1.0 - 2.0 * k / (samples - 1));
        // t = 1/(1+e^{-s}); x = -ln t / c, y = -ln(1-t) / c
        out.push_back({std::log1p(std::exp(-s)) / c, std::log1p(std::exp(s)) / c});
    }
    return out;
}

/// Area under a decreasing polyline, closed down to the axes.
inline double area_under_curve(const std::vector<Vec2>& pts) {
    double a = pts.empty() ? 0.0 : pts.front().x * pts.front().y;
    for (std::size_t i = 1; i < pts.size(); ++i) a += 0.5 * (pts[i].x - pts[i - 1].x) * (pts[i].y + pts[i - 1].y);
    return a;
}

struct HrConstant {
    /// V_h of the maximizer, by direct evaluation of the functional
    double functional = 0.0;
    /// sqrt(2 V_h(G_h)) with V_h(G_h) = 2 vol(G_h)
    double from_volume = 0.0;
};

inline HrConstant hr_constant(int resolution = kDefaultDualResolution) {
    const OctantField h = OctantField::staircase_entropy();
    const MonotoneGraph g = dual_body_graph(h, resolution);
    return {dual_functional(maximizer(h, resolution), h), std::sqrt(2.0 * 2.0 * g.volume())};
}

/// C(|b1-a1| + |a2-b2|, |b1-a1|): monotone right/down lattice paths from A to B.
inline BigInt staircase_count(std::pair<long long, long long> a, std::pair<long long, long long> b) {
    if (!(a.first < b.first && a.second > b.second)) throw InvalidParameter("staircase endpoints need a1 < b1 and a2 > b2");
    const long long right = b.first - a.first;
    const long long down = a.second - b.second;
    const long long k = std::min(right, down);
    BigInt c = 1;
    for (long long i = 1; i <= k; ++i) {
        c *= right + down - k + i;
        c /= i;
    }
    return c;
}

struct StaircaseRate {
    double rate = 0.0;
    long long right = 0;
    long long down = 0;
    double length = 0.0;
};

/// ln(#staircases from (0, b) to (a, 0) staying within distance w = 1/(2 eps) of the
/// chord) / chord length, where (a, b) = round(L n). -inf when no path fits in the tube.
inline StaircaseRate constrained_staircase_rate(Vec2 n, double eps, double length) {
    if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
    if (n.x < 0.0 || n.y < 0.0 || std::abs(norm(n) - 1.0) > 1e-9) throw InvalidParameter("direction must be a unit vector in the quadrant");
    if (!(length >= 1.0)) throw InvalidParameter("length must be >= 1");
    StaircaseRate r;
    r.right = std::llround(length * n.x);
    r.down = std::llround(length * n.y);
    if (r.right < 1 || r.down < 1) throw InvalidParameter("direction too close to an axis for this length");
    const double a = static_cast<double>(r.right), b = static_cast<double>(r.down);
    r.length = std::hypot(a, b);
    const double w = 0.5 / eps;
    // point (i, b - j) with i + j = k; signed offset (b i + a (b - j) - a b) / |AB| = (b i - a j) / |AB|
    auto inside = [&](long long i, long long j) { return std::abs(b * i - a * j) <= w * r.length * (1.0 + 1e-12); };
    const long long steps = r.right + r.down;
    std::vector<double> cur(static_cast<std::size_t>(r.right + 1), 0.0), nxt(cur.size(), 0.0);
    cur[0] = 1.0;
    double log_scale = 0.0;
    for (long long k = 1; k <= steps; ++k) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        const long long lo = std::max(0LL, k - r.down), hi = std::min(k, r.right);
        double mx = 0.0;
        for (long long i = lo; i <= hi; ++i) {
            if (!inside(i, k - i)) continue;
            double v = 0.0;
            if (i >= 1) v += cur[static_cast<std::size_t>(i - 1)];
            if (k - i >= 1) v += cur[static_cast<std::size_t>(i)];
            nxt[static_cast<std::size_t>(i)] = v;
            mx = std::max(mx, v);
        }
        if (mx == 0.0) {
            r.rate = -std::numeric_limits<double>::infinity();
            return r;
        }
        for (long long i = lo; i <= hi; ++i) nxt[static_cast<std::size_t>(i)] /= mx;
        log_scale += std::log(mx);
        std::swap(cur, nxt);
    }
    r.rate = (log_scale + std::log(cur[static_cast<std::size_t>(r.right)])) / r.length;
    return r;
}

/// Boundary of {x in R^2_+ : (x, nu) >= eta'(nu) for nu in the quadrant}, computed by clipping
/// the box [0, R]^2 with the sampled half-planes; the returned chain runs from the top edge
/// of the box to its right edge. nullopt when eta' is non-positive somewhere inside the
/// quadrant (no facet); identically zero eta' gives the coordinate axes.
inline std::optional<std::vector<Vec2>> skyscraper_facet_curve(const OctantField& eta_derivative,
                                                               double radius = 0.0, int per_side = 2000) {
    const std::vector<double> thetas = detail::angle_grid(per_side);
    const double scale = eta_derivative.max_value();
    bool all_zero = true, any_nonpositive = false;
    for (double t : thetas) {
        const double v = eta_derivative.at_angle(t);
        if (v < 0.0) throw RejectedInput(eta_derivative.name() + ": negative value");
        all_zero = all_zero && v == 0.0;
        any_nonpositive = any_nonpositive || v <= 1e-12 * scale;
    }
    const double r = radius > 0.0 ? radius : kRadiusPerScale * (scale > 0.0 ? scale : 1.0);
    if (all_zero) return std::vector<Vec2>{{0.0, r}, {0.0, 0.0}, {r, 0.0}};
    if (any_nonpositive) return std::nullopt;

    std::vector<Vec2> normals = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<double> offsets = {r, r, 0.0, 0.0};
    for (double t : thetas) {
        const Vec2 nu = from_angle(t);
        normals.push_back(-nu);
        offsets.push_back(-eta_derivative(nu));
    }
    const Polygon poly = convex::half_plane_intersection(normals, offsets);
    // keep the vertices off the top and right box edges, plus the two chain ends on them
    const double tol = 1e-9 * r;
    std::size_t start = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 v = poly[i];
        if (v.y >= r - tol && (poly[start].y < r - tol || v.x < poly[start].x)) start = i;
    }
    std::vector<Vec2> chain;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Vec2 v = poly[(start + k) % poly.size()];
        chain.push_back(v);
        if (k > 0 && v.x >= r - tol) break;
    }
    // the polygon is counter-clockwise, so from the top-left corner it runs down and right
    return chain;
}

}  // namespace wulff::dual
