#pragma once

// Contours: connected components of the dual edges crossing disagreeing bonds.

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "wulff/ising/lattice.hpp"

namespace wulff::ising {

/// Bond from `site` toward +x (dir 0), +y (dir 1), or, in box mode, to the boundary at -x
/// (dir 2) or -y (dir 3).
struct Bond {
    int site;
    int dir;
    bool operator==(const Bond&) const = default;
};

struct Contour {
    std::vector<Bond> bonds;
    /// Number of sites cut off by this contour alone (box: from the boundary; torus: from
    /// the largest remaining region). -1 when not computed.
    long long area = -1;

    long long length() const { return static_cast<long long>(bonds.size()); }
};

struct ContourSet {
    std::vector<Contour> contours;

    long long total_length() const {
        long long n = 0;
        for (const auto& c : contours) n += c.length();
        return n;
    }
};

namespace detail {

inline int bond_partner(const SpinLattice& L, const Bond& b) {
    const int l = L.side();
    const int x = b.site % l, y = b.site / l;
    switch (b.dir) {
        case 0: return L.spin_or_boundary(x + 1, y);
        case 1: return L.spin_or_boundary(x, y + 1);
        case 2: return L.spin_or_boundary(x - 1, y);
        default: return L.spin_or_boundary(x, y - 1);
    }
}

/// The two corners of the dual edge crossing bond b, as ids in a (l+1)^2 (box) or l^2 (torus) grid.
inline std::pair<int, int> dual_corners(const SpinLattice& L, const Bond& b) {
    const int l = L.side();
    const bool torus = L.topology() == Topology::torus;
    const int x = b.site % l, y = b.site / l;
    auto id = [&](int cx, int cy) {
        if (torus) return ((cy % l + l) % l) * l + ((cx % l + l) % l);
        return cy * (l + 1) + cx;
    };
    switch (b.dir) {
        case 0: return {id(x + 1, y), id(x + 1, y + 1)};
        case 1: return {id(x, y + 1), id(x + 1, y + 1)};
        case 2: return {id(x, y), id(x, y + 1)};
        default: return {id(x, y), id(x + 1, y)};
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace detail

/// Every bond of the lattice exactly once.
inline std::vector<Bond> all_bonds(const SpinLattice& L) {
    const int l = L.side();
    std::vector<Bond> out;
    for (int s = 0; s < L.sites(); ++s) {
        const int x = s % l, y = s / l;
        out.push_back({s, 0});
        out.push_back({s, 1});
        if (L.topology() == Topology::box) {
            if (x == 0) out.push_back({s, 2});
            if (y == 0) out.push_back({s, 3});
        }
    }
    return out;
}

/// Sites separated by the bonds of `c` alone (see Contour::area).
inline long long contour_area(const SpinLattice& L, const Contour& c) {
    const int n = L.sites();
    const int l = L.side();
    const bool box = L.topology() == Topology::box;
    std::vector<char> cut(static_cast<std::size_t>(n) * 4, 0);
    for (const Bond& b : c.bonds) cut[static_cast<std::size_t>(b.site) * 4 + static_cast<std::size_t>(b.dir)] = 1;
    // node n is the exterior in box mode
    std::vector<int> comp(static_cast<std::size_t>(n + 1), -1);
    std::vector<long long> sizes;
    auto neighbours = [&](int s, auto&& visit) {
        const int x = s % l, y = s / l;
        // +x / +y bonds stored on s; -x / -y bonds stored on the neighbour (or on s at the box edge)
        auto link = [&](int owner, int dir, int other) {
            if (!cut[static_cast<std::size_t>(owner) * 4 + static_cast<std::size_t>(dir)]) visit(other);
        };
        if (box) {
            link(s, 0, x + 1 < l ? s + 1 : n);
            link(s, 1, y + 1 < l ? s + l : n);
            if (x == 0) link(s, 2, n); else link(s - 1, 0, s - 1);
            if (y == 0) link(s, 3, n); else link(s - l, 1, s - l);
        } else {
            const int xr = (x + 1) % l, yu = (y + 1) % l, xl = (x + l - 1) % l, yd = (y + l - 1) % l;
            link(s, 0, y * l + xr);
            link(s, 1, yu * l + x);
            link(y * l + xl, 0, y * l + xl);
            link(yd * l + x, 1, yd * l + x);
        }
    };
    auto flood = [&](int start, int label) {
        long long size = 0;
        std::queue<int> q;
        q.push(start);
        comp[static_cast<std::size_t>(start)] = label;
        while (!q.empty()) {
            const int s = q.front();
            q.pop();
            if (s == n) {
                // exterior: reach every boundary-adjacent site through its uncut boundary bond
                for (int t = 0; t < n; ++t) {
                    const int x = t % l, y = t / l;
                    auto try_edge = [&](int owner, int dir) {
                        if (!cut[static_cast<std::size_t>(owner) * 4 + static_cast<std::size_t>(dir)] && comp[static_cast<std::size_t>(t)] < 0) {
                            comp[static_cast<std::size_t>(t)] = label;
                            q.push(t);
                        }
                    };
                    if (x == 0) try_edge(t, 2);
                    if (y == 0) try_edge(t, 3);
                    if (x == l - 1) try_edge(t, 0);
                    if (y == l - 1) try_edge(t, 1);
                }
                continue;
            }
            ++size;
            neighbours(s, [&](int o) {
                if (comp[static_cast<std::size_t>(o)] < 0) {
                    comp[static_cast<std::size_t>(o)] = label;
                    q.push(o);
                }
            });
        }
        return size;
    };
    if (box) {
        const long long outside = flood(n, 0);
        return n - outside;
    }
    int label = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] < 0) sizes.push_back(flood(s, label++));
    }
    return n - *std::max_element(sizes.begin(), sizes.end());
}

/// Components of dual edges of disagreeing bonds; edges meeting at a dual vertex belong to
/// the same contour.
inline ContourSet extract_contours(const SpinLattice& L, bool with_areas = true) {
    const int l = L.side();
    const int corners = L.topology() == Topology::torus ? l * l : (l + 1) * (l + 1);
    std::vector<Bond> broken;
    for (const Bond& b : all_bonds(L)) {
        if (L.spin(b.site) != detail::bond_partner(L, b)) broken.push_back(b);
    }
    detail::UnionFind uf(corners);
    for (const Bond& b : broken) {
        const auto [a, c] = detail::dual_corners(L, b);
        uf.unite(a, c);
    }
    ContourSet set;
    std::vector<int> slot(static_cast<std::size_t>(corners), -1);
    for (const Bond& b : broken) {
        const int root = uf.find(detail::dual_corners(L, b).first);
        if (slot[static_cast<std::size_t>(root)] < 0) {
            slot[static_cast<std::size_t>(root)] = static_cast<int>(set.contours.size());
            set.contours.emplace_back();
        }
        set.contours[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].bonds.push_back(b);
    }
    if (with_areas) {
        for (auto& c : set.contours) c.area = contour_area(L, c);
    }
    return set;
}

/// Area of the longest contour (0 when there is none).
inline long long longest_contour_area(const SpinLattice& L) {
    ContourSet set = extract_contours(L, false);
    if (set.contours.empty()) return 0;
    const auto it = std::max_element(set.contours.begin(), set.contours.end(),
                                     [](const Contour& a, const Contour& b) { return a.length() < b.length(); });
    return contour_area(L, *it);
}

}  // namespace wulff::ising
