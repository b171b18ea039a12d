#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/core/vec.hpp"

namespace wulff::convex {

/// A non-negative function on the unit sphere S^d of R^{d+1} (d = 1 or 2): a surface tension
/// tau(n) when flagged even and positive.
class DirectionField {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    DirectionField(int ambient_dim, Evaluator f, std::string name, bool even = true, double lower_bound = 0.0)
        : ambient_dim_(ambient_dim), f_(std::move(f)), name_(std::move(name)), even_(even), lower_bound_(lower_bound) {
        if (ambient_dim_ != 2 && ambient_dim_ != 3) throw InvalidParameter("direction fields live on S^1 or S^2");
    }

    int ambient_dim() const { return ambient_dim_; }
    int surface_dim() const { return ambient_dim_ - 1; }
    const std::string& name() const { return name_; }
    bool even() const { return even_; }
    double lower_bound() const { return lower_bound_; }

    double operator()(Vec2 n) const {
        const double v[2] = {n.x, n.y};
        return f_(std::span<const double>(v, 2));
    }
    double operator()(Vec3 n) const {
        const double v[3] = {n.x, n.y, n.z};
        return f_(std::span<const double>(v, 3));
    }
    double at_angle(double theta) const { return (*this)(from_angle(theta)); }

    /// lambda * tau
    DirectionField scaled(double lambda) const {
        auto f = f_;
        return DirectionField(ambient_dim_, [f, lambda](std::span<const double> n) { return lambda * f(n); },
                              name_ + "*" + std::to_string(lambda), even_, lower_bound_ * lambda);
    }

    /// Checks positivity (when a lower bound is declared) and evenness on `samples` directions.
    void validate(int samples = 720) const {
        auto check = [&](auto n, auto minus_n) {
            const double v = (*this)(n);
            if (!(v >= 0.0) || !std::isfinite(v)) throw RejectedInput(name_ + ": negative or non-finite value");
            if (lower_bound_ > 0.0 && v < lower_bound_) throw RejectedInput(name_ + ": value below the declared positive bound");
            if (even_ && std::abs(v - (*this)(minus_n)) > 1e-12 * std::max(1.0, std::abs(v))) {
                throw RejectedInput(name_ + ": field flagged even but tau(n) != tau(-n)");
            }
        };
        if (ambient_dim_ == 2) {
            for (int k = 0; k < samples; ++k) {
                const Vec2 n = from_angle(2.0 * std::numbers::pi * k / samples);
                check(n, -n);
            }
        } else {
            // Fibonacci sphere
            const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
            for (int k = 0; k < samples; ++k) {
                const double z = 1.0 - 2.0 * (k + 0.5) / samples;
                const double r = std::sqrt(1.0 - z * z);
                const Vec3 n{r * std::cos(golden * k), r * std::sin(golden * k), z};
                check(n, -n);
            }
        }
    }

    static DirectionField isotropic(int ambient_dim, double value = 1.0) {
        return DirectionField(ambient_dim, [value](std::span<const double>) { return value; }, "isotropic", true, value);
    }

    /// Sum of |n_i|: the support function of the cube [-1,1]^{d+1}.
    static DirectionField l1(int ambient_dim) {
        return DirectionField(
            ambient_dim,
            [](std::span<const double> n) {
                double s = 0.0;
                for (double c : n) s += std::abs(c);
                return s;
            },
            "l1", true, 1.0);
    }

    /// 1 + amplitude * cos(4 theta) on S^1.
    static DirectionField cos4(double amplitude = 0.3) {
        return DirectionField(
            2, [amplitude](std::span<const double> n) { return 1.0 + amplitude * std::cos(4.0 * std::atan2(n[1], n[0])); },
            "cos4", true, 1.0 - amplitude);
    }

    /// Piecewise-linear periodic interpolation of (angle, value) samples on S^1.
    static DirectionField tabulated(std::vector<std::pair<double, double>> table, std::string name = "table") {
        if (table.size() < 2) throw InvalidParameter("tabulated field needs at least two samples");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        for (auto& [a, v] : table) {
            a = std::fmod(a, two_pi);
            if (a < 0) a += two_pi;
            if (!(v >= 0.0)) throw RejectedInput("tabulated field has a negative value");
        }
        std::sort(table.begin(), table.end());
        double lo = table.front().second;
        for (const auto& row : table) lo = std::min(lo, row.second);
        auto data = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(table));
        return DirectionField(
            2,
            [data](std::span<const double> n) {
                const auto& t = *data;
                double a = std::atan2(n[1], n[0]);
                if (a < 0) a += two_pi;
                auto it = std::upper_bound(t.begin(), t.end(), a, [](double x, const auto& row) { return x < row.first; });
                const auto& hi = it == t.end() ? t.front() : *it;
                const auto& lo_row = it == t.begin() ? t.back() : *(it - 1);
                double a0 = lo_row.first;
                double a1 = hi.first;
                if (a1 <= a0) a1 += two_pi;
                double x = a;
                if (x < a0) x += two_pi;
                const double w = (x - a0) / (a1 - a0);
                return lo_row.second + w * (hi.second - lo_row.second);
            },
            std::move(name), true, lo);
    }

    /// Built-ins by name: "isotropic", "l1", "cos4".
    static DirectionField named(const std::string& name, int ambient_dim = 2) {
        if (name == "isotropic") return isotropic(ambient_dim);
        if (name == "l1") return l1(ambient_dim);
        if (name == "cos4") {
            if (ambient_dim != 2) throw InvalidParameter("cos4 is defined on S^1 only");
            return cos4();
        }
        throw InvalidParameter("unknown direction field '" + name + "'");
    }

private:
    int ambient_dim_;
    Evaluator f_;
    std::string name_;
    bool even_;
    double lower_bound_;
};

}  // namespace wulff::convex
