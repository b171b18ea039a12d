#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"

namespace wulff::convex {

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

/// Uniform-grid index over the segments of a polyline for nearest-distance queries.
class SegmentIndex {
public:
    explicit SegmentIndex(const std::vector<Vec2>& polyline) : pts_(polyline) {
        if (pts_.empty()) throw InvalidParameter("segment index over an empty point set");
        if (pts_.size() == 1) pts_.push_back(pts_.front());
        lo_ = hi_ = pts_.front();
        double total = 0.0;
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            lo_ = {std::min(lo_.x, pts_[i].x), std::min(lo_.y, pts_[i].y)};
            hi_ = {std::max(hi_.x, pts_[i].x), std::max(hi_.y, pts_[i].y)};
            if (i) total += norm(pts_[i] - pts_[i - 1]);
        }
        const double w = hi_.x - lo_.x, h = hi_.y - lo_.y;
        const double segs = static_cast<double>(pts_.size() - 1);
        // about two segment lengths per cell, but never more than ~4 cells per segment
        cell_ = std::max({total / segs * 2.0, std::sqrt(w * h / (4.0 * segs + 16.0)), std::max(w, h) / 4096.0, 1e-12});
        nx_ = static_cast<int>(w / cell_) + 1;
        ny_ = static_cast<int>(h / cell_) + 1;
        // compressed buckets: count, prefix-sum, fill
        std::vector<std::array<int, 4>> boxes(pts_.size() - 1);
        start_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_) + 1, 0);
        for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
            const Vec2 a = pts_[i], b = pts_[i + 1];
            boxes[i] = {cx(std::min(a.x, b.x)), cx(std::max(a.x, b.x)), cy(std::min(a.y, b.y)), cy(std::max(a.y, b.y))};
            for (int x = boxes[i][0]; x <= boxes[i][1]; ++x)
                for (int y = boxes[i][2]; y <= boxes[i][3]; ++y) ++start_[slot(x, y) + 1];
        }
        for (std::size_t k = 1; k < start_.size(); ++k) start_[k] += start_[k - 1];
        segments_.resize(static_cast<std::size_t>(start_.back()));
        std::vector<int> fill(start_.begin(), start_.end() - 1);
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            for (int x = boxes[i][0]; x <= boxes[i][1]; ++x)
                for (int y = boxes[i][2]; y <= boxes[i][3]; ++y) segments_[static_cast<std::size_t>(fill[slot(x, y)]++)] = static_cast<int>(i);
        }
    }

    double distance(Vec2 p) const {
        // distance to the grid box
        const double ox = std::max({lo_.x - p.x, 0.0, p.x - hi_.x});
        const double oy = std::max({lo_.y - p.y, 0.0, p.y - hi_.y});
        const double outside = std::hypot(ox, oy);
        const int px = cx(p.x);
        const int py = cy(p.y);
        double best = std::numeric_limits<double>::infinity();
        auto scan = [&](int x, int y) {
            if (x < 0 || y < 0 || x >= nx_ || y >= ny_) return;
            const std::size_t k = slot(x, y);
            for (int j = start_[k]; j < start_[k + 1]; ++j) {
                const std::size_t s = static_cast<std::size_t>(segments_[static_cast<std::size_t>(j)]);
                best = std::min(best, point_segment_distance(p, pts_[s], pts_[s + 1]));
            }
        };
        const int max_ring = std::max(nx_, ny_) + 1;
        for (int r = 0; r <= max_ring; ++r) {
            // cells on ring r are >= (r - 1) * cell_ from the clamped point, which is `outside` away from p
            if (best <= std::max(outside, (r - 1) * cell_ - outside)) break;
            if (r == 0) {
                scan(px, py);
                continue;
            }
            for (int x = px - r; x <= px + r; ++x) {
                scan(x, py - r);
                scan(x, py + r);
            }
            for (int y = py - r + 1; y <= py + r - 1; ++y) {
                scan(px - r, y);
                scan(px + r, y);
            }
        }
        return best;
    }

private:
    int cx(double x) const { return std::clamp(static_cast<int>((x - lo_.x) / cell_), 0, nx_ - 1); }
    int cy(double y) const { return std::clamp(static_cast<int>((y - lo_.y) / cell_), 0, ny_ - 1); }
    std::size_t slot(int x, int y) const { return static_cast<std::size_t>(x) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(y); }

    std::vector<Vec2> pts_;
    Vec2 lo_, hi_;
    double cell_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<int> start_;
    std::vector<int> segments_;
};

/// Points along the polyline with consecutive gaps <= spacing (original vertices included).
inline std::vector<Vec2> densify(const std::vector<Vec2>& polyline, double spacing) {
    if (polyline.size() < 2) return polyline;
    std::vector<Vec2> out{polyline.front()};
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        const Vec2 a = polyline[i - 1];
        const Vec2 b = polyline[i];
        const int steps = std::max(1, static_cast<int>(std::ceil(norm(b - a) / spacing)));
        for (int s = 1; s <= steps; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / steps));
    }
    return out;
}

/// sup_{a in A} dist(a, B) with A sampled at `spacing`.
inline double directed_hausdorff(const std::vector<Vec2>& a, const SegmentIndex& b, double spacing) {
    double worst = 0.0;
    for (const Vec2& p : densify(a, spacing)) worst = std::max(worst, b.distance(p));
    return worst;
}

/// Hausdorff distance between two polylines (closed curves should repeat their first vertex).
inline double hausdorff_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double spacing = 1e-3) {
    if (a.empty() || b.empty()) throw InvalidParameter("hausdorff_distance of an empty set");
    if (!(spacing > 0.0)) throw InvalidParameter("densification spacing must be positive");
    if (a == b) return 0.0;
    return std::max(directed_hausdorff(a, SegmentIndex(b), spacing), directed_hausdorff(b, SegmentIndex(a), spacing));
}

/// Hausdorff distance between the parts of two polylines inside the box [lo, hi]^2, each part
/// measured against the whole of the other curve so that the box edges add no spurious gap.
inline double windowed_hausdorff(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double lo, double hi,
                                 double spacing = 1e-3) {
    if (a.empty() || b.empty()) throw InvalidParameter("windowed_hausdorff of an empty set");
    if (!(hi > lo)) throw InvalidParameter("empty window");
    auto directed = [&](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
        const SegmentIndex index(to);
        double worst = 0.0;
        for (const Vec2& p : densify(from, spacing)) {
            if (p.x < lo || p.x > hi || p.y < lo || p.y > hi) continue;
            worst = std::max(worst, index.distance(p));
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace wulff::convex
