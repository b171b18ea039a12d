#pragma once

// Polygon and convex-polyhedron primitives: half-space clipping, areas/volumes,
// simplicity test, icosphere directions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"

namespace wulff::convex {

inline constexpr double kGeomEps = 1e-9;

/// Open vertex list, counter-clockwise for positive area.
using Polygon = std::vector<Vec2>;

inline double signed_area(const Polygon& p) {
    double a = 0.0;
    for (std::size_t i = 0, n = p.size(); i < n; ++i) a += cross(p[i], p[(i + 1) % n]);
    return 0.5 * a;
}

/// Keeps {x : (x, n) <= offset}. Vertices within eps of the line count as inside.
inline Polygon clip_halfplane(const Polygon& poly, Vec2 n, double offset, double eps = kGeomEps) {
    Polygon out;
    const std::size_t count = poly.size();
    out.reserve(count + 1);
    for (std::size_t i = 0; i < count; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % count];
        const double da = dot(a, n) - offset;
        const double db = dot(b, n) - offset;
        if (da <= eps) out.push_back(a);
        if ((da < -eps && db > eps) || (da > eps && db < -eps)) {
            const double t = da / (da - db);
            out.push_back(a + (b - a) * t);
        }
    }
    Polygon dedup;
    dedup.reserve(out.size());
    for (const Vec2& v : out) {
        if (dedup.empty() || norm(v - dedup.back()) > 1e-13) dedup.push_back(v);
    }
    while (dedup.size() > 1 && norm(dedup.front() - dedup.back()) <= 1e-13) dedup.pop_back();
    return dedup;
}

/// Bounded intersection of {x : (x, normals[i]) <= offsets[i]}, counter-clockwise.
/// Every vertex is solved from its two supporting lines rather than interpolated along
/// clipped edges, so nearly parallel neighbours do not accumulate error.
/// Throws InvalidParameter when the intersection is unbounded, empty or degenerate.
inline Polygon half_plane_intersection(const std::vector<Vec2>& normals, const std::vector<double>& offsets,
                                       double eps = kGeomEps) {
    if (normals.empty() || normals.size() != offsets.size()) throw InvalidParameter("mismatched half-plane data");
    std::vector<double> angles;
    angles.reserve(normals.size());
    for (const Vec2& n : normals) angles.push_back(std::atan2(n.y, n.x));
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    if (gap >= std::numbers::pi - 1e-12) throw InvalidParameter("half-plane intersection is unbounded");

    double reach = 0.0;
    for (double c : offsets) reach = std::max(reach, std::abs(c));
    const double box = 1e6 * (reach + 1.0);
    std::vector<Vec2> ln = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    std::vector<double> lc = {box, box, box, box};
    ln.insert(ln.end(), normals.begin(), normals.end());
    lc.insert(lc.end(), offsets.begin(), offsets.end());
    auto meet = [&](int i, int j) {
        const Vec2 a = ln[static_cast<std::size_t>(i)], b = ln[static_cast<std::size_t>(j)];
        const double ca = lc[static_cast<std::size_t>(i)], cb = lc[static_cast<std::size_t>(j)];
        const double det = cross(a, b);
        return Vec2{(ca * b.y - cb * a.y) / det, (a.x * cb - b.x * ca) / det};
    };

    // vertex k carries the label of the line its outgoing edge lies on
    struct Corner {
        Vec2 p;
        int line;
    };
    std::vector<Corner> poly = {{{-box, -box}, 0}, {{box, -box}, 1}, {{box, box}, 2}, {{-box, box}, 3}};
    std::vector<Corner> next;
    for (int k = 4; k < static_cast<int>(ln.size()); ++k) {
        const Vec2 n = ln[static_cast<std::size_t>(k)];
        const double c = lc[static_cast<std::size_t>(k)];
        next.clear();
        const std::size_t count = poly.size();
        for (std::size_t i = 0; i < count; ++i) {
            const Corner a = poly[i];
            const Corner b = poly[(i + 1) % count];
            const double da = dot(a.p, n) - c;
            const double db = dot(b.p, n) - c;
            if (da <= eps) next.push_back({a.p, da >= -eps && db > eps ? k : a.line});
            if (da < -eps && db > eps) {
                next.push_back({meet(a.line, k), k});
            } else if (da > eps && db < -eps) {
                next.push_back({meet(a.line, k), a.line});
            }
        }
        poly.clear();
        for (const Corner& v : next) {
            if (!poly.empty() && norm(v.p - poly.back().p) <= 1e-13 * (1.0 + norm(v.p))) {
                poly.back().line = v.line;
                continue;
            }
            poly.push_back(v);
        }
        while (poly.size() > 1 && norm(poly.front().p - poly.back().p) <= 1e-13 * (1.0 + norm(poly.front().p))) {
            poly.pop_back();
        }
        if (poly.size() < 3) throw InvalidParameter("half-plane intersection is empty or degenerate");
    }
    Polygon out;
    out.reserve(poly.size());
    for (const Corner& v : poly) {
        if (v.line < 4) throw InvalidParameter("half-plane intersection is unbounded");
        out.push_back(v.p);
    }
    return out;
}

namespace detail {

inline bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace detail

/// True when no two non-adjacent edges cross. O(n^2) with bounding-box rejection.
inline bool is_simple(const Polygon& p) {
    const std::size_t n = p.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = p[i];
        const Vec2 b = p[(i + 1) % n];
        const double xmin = std::min(a.x, b.x), xmax = std::max(a.x, b.x);
        const double ymin = std::min(a.y, b.y), ymax = std::max(a.y, b.y);
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            const Vec2 c = p[j];
            const Vec2 d = p[(j + 1) % n];
            if (std::max(c.x, d.x) < xmin || std::min(c.x, d.x) > xmax || std::max(c.y, d.y) < ymin ||
                std::min(c.y, d.y) > ymax) {
                continue;
            }
            if (detail::segments_cross(a, b, c, d)) return false;
        }
    }
    return true;
}

/// Outward unit normal of edge a->b of a counter-clockwise polygon.
inline Vec2 outward_normal(Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const double len = norm(e);
    return {e.y / len, -e.x / len};
}

/// Closed triangle mesh, triangles counter-clockwise seen from outside.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    double volume() const {
        double v = 0.0;
        for (const auto& t : triangles) {
            v += dot(vertices[static_cast<std::size_t>(t[0])],
                     cross(vertices[static_cast<std::size_t>(t[1])], vertices[static_cast<std::size_t>(t[2])]));
        }
        return v / 6.0;
    }

    /// V - E + F over referenced vertices and undirected edges.
    int euler_characteristic() const {
        std::vector<char> used(vertices.size(), 0);
        std::map<std::pair<int, int>, int> edges;
        for (const auto& t : triangles) {
            for (int k = 0; k < 3; ++k) {
                used[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])] = 1;
                const int a = t[static_cast<std::size_t>(k)];
                const int b = t[static_cast<std::size_t>((k + 1) % 3)];
                edges[{std::min(a, b), std::max(a, b)}] += 1;
            }
        }
        const int v = static_cast<int>(std::count(used.begin(), used.end(), 1));
        return v - static_cast<int>(edges.size()) + static_cast<int>(triangles.size());
    }

    /// Every directed edge is matched by exactly one reversed edge.
    bool is_watertight() const {
        std::map<std::pair<int, int>, int> directed;
        for (const auto& t : triangles) {
            for (int k = 0; k < 3; ++k) directed[{t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>((k + 1) % 3)]}] += 1;
        }
        for (const auto& [e, c] : directed) {
            if (c != 1) return false;
            auto it = directed.find({e.second, e.first});
            if (it == directed.end() || it->second != 1) return false;
        }
        return true;
    }
};

/// Convex polyhedron as shared vertices plus faces (vertex index cycles, counter-clockwise from outside).
class ConvexPolyhedron {
public:
    static ConvexPolyhedron cube(double half_side) {
        ConvexPolyhedron p;
        const double s = half_side;
        p.verts_ = {{-s, -s, -s}, {s, -s, -s}, {s, s, -s}, {-s, s, -s}, {-s, -s, s}, {s, -s, s}, {s, s, s}, {-s, s, s}};
        p.faces_ = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4}, {2, 3, 7, 6}, {1, 2, 6, 5}, {0, 4, 7, 3}};
        return p;
    }

    const std::vector<Vec3>& vertices() const { return verts_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }

    /// Keeps {x : (x, n) <= offset}; the cut is closed by a new cap face.
    void clip(Vec3 n, double offset, double eps = kGeomEps) {
        std::vector<double> d(verts_.size());
        bool any_out = false;
        for (std::size_t v = 0; v < verts_.size(); ++v) d[v] = dot(verts_[v], n) - offset;
        for (const auto& f : faces_) {
            for (int v : f) any_out = any_out || d[static_cast<std::size_t>(v)] > eps;
        }
        if (!any_out) return;

        std::map<std::pair<int, int>, int> edge_point;
        auto split = [&](int a, int b) {
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            if (auto it = edge_point.find(key); it != edge_point.end()) return it->second;
            const Vec3 pa = verts_[static_cast<std::size_t>(key.first)];
            const Vec3 pb = verts_[static_cast<std::size_t>(key.second)];
            const double da = d[static_cast<std::size_t>(key.first)];
            const double db = d[static_cast<std::size_t>(key.second)];
            verts_.push_back(pa + (pb - pa) * (da / (da - db)));
            d.push_back(0.0);
            const int idx = static_cast<int>(verts_.size()) - 1;
            edge_point.emplace(key, idx);
            return idx;
        };

        std::vector<std::vector<int>> kept;
        kept.reserve(faces_.size() + 1);
        for (const auto& f : faces_) {
            bool has_out = false;
            bool has_in = false;
            for (int v : f) {
                has_out = has_out || d[static_cast<std::size_t>(v)] > eps;
                has_in = has_in || d[static_cast<std::size_t>(v)] < -eps;
            }
            if (!has_out) {
                kept.push_back(f);
                continue;
            }
            if (!has_in) continue;
            std::vector<int> nf;
            for (std::size_t i = 0; i < f.size(); ++i) {
                const int a = f[i];
                const int b = f[(i + 1) % f.size()];
                const double da = d[static_cast<std::size_t>(a)];
                const double db = d[static_cast<std::size_t>(b)];
                if (da <= eps) nf.push_back(a);
                if ((da < -eps && db > eps) || (da > eps && db < -eps)) nf.push_back(split(a, b));
            }
            if (nf.size() >= 3) kept.push_back(std::move(nf));
        }

        // Edges lying in the cutting plane that lost their twin bound the cap.
        auto on_plane = [&](int v) { return std::abs(d[static_cast<std::size_t>(v)]) <= eps; };
        std::map<std::pair<int, int>, int> plane_edges;
        for (const auto& f : kept) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                const int a = f[i];
                const int b = f[(i + 1) % f.size()];
                if (on_plane(a) && on_plane(b)) plane_edges[{a, b}] += 1;
            }
        }
        std::unordered_map<int, int> next;
        for (const auto& [e, c] : plane_edges) {
            if (plane_edges.count({e.second, e.first})) continue;
            if (next.count(e.second)) throw ContractViolation("non-manifold cut while clipping polyhedron");
            next[e.second] = e.first;
        }
        while (!next.empty()) {
            std::vector<int> cap;
            int start = next.begin()->first;
            int cur = start;
            do {
                cap.push_back(cur);
                auto it = next.find(cur);
                if (it == next.end()) throw ContractViolation("open cap boundary while clipping polyhedron");
                cur = it->second;
                next.erase(it);
            } while (cur != start);
            if (cap.size() >= 3) kept.push_back(std::move(cap));
        }
        faces_ = std::move(kept);
    }

    /// Fan triangulation with unused vertices dropped.
    Mesh triangulate() const {
        Mesh m;
        std::vector<int> remap(verts_.size(), -1);
        auto id = [&](int v) {
            if (remap[static_cast<std::size_t>(v)] < 0) {
                remap[static_cast<std::size_t>(v)] = static_cast<int>(m.vertices.size());
                m.vertices.push_back(verts_[static_cast<std::size_t>(v)]);
            }
            return remap[static_cast<std::size_t>(v)];
        };
        for (const auto& f : faces_) {
            for (std::size_t i = 1; i + 1 < f.size(); ++i) m.triangles.push_back({id(f[0]), id(f[i]), id(f[i + 1])});
        }
        return m;
    }

private:
    std::vector<Vec3> verts_;
    std::vector<std::vector<int>> faces_;
};

/// Unit vertices of an icosahedron subdivided `level` times (10*4^level + 2 directions).
inline std::vector<Vec3> icosphere_directions(int level) {
    if (level < 0) throw InvalidParameter("icosphere level must be >= 0");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                           {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& p : v) p = normalized(p);
    std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int a, int b) {
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            if (auto it = mid.find(key); it != mid.end()) return it->second;
            v.push_back(normalized(v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)]));
            const int idx = static_cast<int>(v.size()) - 1;
            mid.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> nf;
        nf.reserve(f.size() * 4);
        for (const auto& tri : f) {
            const int a = midpoint(tri[0], tri[1]);
            const int b = midpoint(tri[1], tri[2]);
            const int c = midpoint(tri[2], tri[0]);
            nf.push_back({tri[0], a, c});
            nf.push_back({tri[1], b, a});
            nf.push_back({tri[2], c, b});
            nf.push_back({a, b, c});
        }
        f.swap(nf);
    }
    return v;
}

}  // namespace wulff::convex
