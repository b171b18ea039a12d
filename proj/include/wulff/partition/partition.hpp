#pragma once

// Integer partitions (Young diagrams), their generating functions and the
// brute-force enumeration oracle used to certify them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"
#include "wulff/series/int_series.hpp"

namespace wulff::partition {

/// Partition n_1 >= n_2 >= ... > 0. Multiplicities are derived on demand.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        std::erase(parts_, 0);
        for (int p : parts_) {
            if (p < 0) throw InvalidParameter("partition parts must be non-negative");
        }
        if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>{})) {
            throw InvalidParameter("partition parts must be non-increasing");
        }
    }

    /// Builds the partition with r_k parts equal to k (index 0 of `mult` is ignored).
    static Partition from_multiplicities(const std::vector<long long>& mult) {
        std::vector<int> parts;
        for (int k = static_cast<int>(mult.size()) - 1; k >= 1; --k) {
            parts.insert(parts.end(), static_cast<std::size_t>(mult[static_cast<std::size_t>(k)]), k);
        }
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int num_parts() const { return static_cast<int>(parts_.size()); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    bool empty() const { return parts_.empty(); }

    long long volume() const {
        long long v = 0;
        for (int p : parts_) v += p;
        return v;
    }

    /// r_k for k = 0..largest (r_0 = 0).
    std::vector<long long> multiplicities() const {
        std::vector<long long> r(static_cast<std::size_t>(largest()) + 1, 0);
        for (int p : parts_) ++r[static_cast<std::size_t>(p)];
        return r;
    }

    bool is_strict() const { return std::adjacent_find(parts_.begin(), parts_.end()) == parts_.end(); }

    auto operator<=>(const Partition&) const = default;

    std::string to_json() const {
        std::string s = "[";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + "]";
    }

private:
    std::vector<int> parts_;
};

/// prod_{l>=1} 1/(1 - x^l), or prod_{l>=1} (1 + x^l) when `strict`.
inline TruncatedIntSeries euler_series(int degree, bool strict = false) {
    TruncatedIntSeries s = TruncatedIntSeries::one(degree);
    for (int l = 1; l <= degree; ++l) {
        if (strict) {
            for (int k = degree; k >= l; --k) s[k] += s[k - l];
        } else {
            s.div_one_minus_x_pow(l);
        }
    }
    return s;
}

/// prod_{l=1}^{k} 1/(1 - x^l): partitions with at most k parts (equivalently parts <= k).
inline TruncatedIntSeries bounded_parts_series(int k, int degree) {
    if (k < 1) throw InvalidParameter("bounded_parts_series needs k >= 1");
    TruncatedIntSeries s = TruncatedIntSeries::one(degree);
    for (int l = 1; l <= k && l <= degree; ++l) s.div_one_minus_x_pow(l);
    return s;
}

struct EnumerateOptions {
    std::optional<int> max_parts;
    bool strict = false;
    /// Lifts the N <= 60 guard.
    bool allow_large = false;
};

inline constexpr int kEnumerationGuard = 60;

/// Every partition of n, in decreasing lexicographic order ([4], [3,1], [2,2], ...).
inline std::vector<Partition> enumerate_partitions(int n, const EnumerateOptions& opts = {}) {
    if (n < 0) throw InvalidParameter("cannot partition a negative integer");
    if (n > kEnumerationGuard && !opts.allow_large) {
        throw GuardExceeded("enumerate_partitions: N=" + std::to_string(n) + " exceeds the guard of " +
                            std::to_string(kEnumerationGuard) + "; pass allow_large to override");
    }
    const int max_parts = opts.max_parts.value_or(n);
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        if (static_cast<int>(cur.size()) >= max_parts) return;
        for (int p = std::min(remaining, cap); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, opts.strict ? p - 1 : p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Step function phi(y) = #{parts >= y} for integer plateaus y = 1..largest.
struct DiagramProfile {
    /// heights[k-1] = phi on (k-1, k]
    std::vector<int> heights;

    long long area() const {
        long long a = 0;
        for (int h : heights) a += h;
        return a;
    }

    /// Boundary staircase from (0, phi(1)) to (largest, 0).
    std::vector<Vec2> polyline(double scale = 1.0) const {
        std::vector<Vec2> pts;
        if (heights.empty()) return {{0.0, 0.0}};
        pts.push_back({0.0, heights[0] * scale});
        for (std::size_t k = 0; k < heights.size(); ++k) {
            const double x = static_cast<double>(k + 1) * scale;
            pts.push_back({x, heights[k] * scale});
            const int next = k + 1 < heights.size() ? heights[k + 1] : 0;
            if (next != heights[k]) pts.push_back({x, next * scale});
        }
        return pts;
    }

    /// Recovers r_k = phi(k) - phi(k+1).
    Partition read_back() const {
        std::vector<long long> r(heights.size() + 1, 0);
        for (std::size_t k = 0; k < heights.size(); ++k) {
            const int next = k + 1 < heights.size() ? heights[k + 1] : 0;
            r[k + 1] = heights[k] - next;
        }
        return Partition::from_multiplicities(r);
    }
};

inline DiagramProfile profile(const Partition& p) {
    DiagramProfile prof;
    prof.heights.resize(static_cast<std::size_t>(p.largest()), 0);
    for (int part : p.parts()) {
        for (int y = 0; y < part; ++y) ++prof.heights[static_cast<std::size_t>(y)];
    }
    return prof;
}

/// Boundary polyline of the diagram scaled by 1/sqrt(N); encloses unit area.
inline std::vector<Vec2> scaled_profile(const Partition& p) {
    if (p.empty()) throw InvalidParameter("scaled_profile of the empty partition");
    return profile(p).polyline(1.0 / std::sqrt(static_cast<double>(p.volume())));
}

/// Area under a decreasing polyline that starts on the y-axis and ends on the x-axis.
inline double area_under(const std::vector<Vec2>& pts) {
    double a = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) a += 0.5 * (pts[i].x - pts[i - 1].x) * (pts[i].y + pts[i - 1].y);
    return a;
}

/// pi*sqrt(2N/3) - ln(4 N sqrt 3): leading terms of ln pi_2(N).
inline double hrr_log_asymptote(double n) {
    return std::numbers::pi * std::sqrt(2.0 * n / 3.0) - std::log(4.0 * n * std::sqrt(3.0));
}

/// Natural logarithm of a positive big integer.
inline double log_big(const BigInt& v) {
    if (v <= 0) throw InvalidParameter("log of a non-positive integer");
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits < 1000) return std::log(v.convert_to<long double>());
    const unsigned drop = bits - 900;
    BigInt top = v >> drop;
    return static_cast<double>(std::log(top.convert_to<long double>()) + drop * std::log(2.0L));
}

}  // namespace wulff::partition
