#pragma once

// MacMahon products, hook lengths, pedestal polynomials and the spatial (3D array)
// generating functions, including the failure of the naive 4D MacMahon product.

#include <optional>
#include <string>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/series/int_series.hpp"
#include "wulff/skyscraper/board.hpp"

namespace wulff::skyscraper {

/// prod_{i<=m, j<=n} 1/(1 - x^{i+j-1}) truncated at degree.
inline TruncatedIntSeries macmahon_series(int m, int n, int degree) {
    if (m < 1 || n < 1) throw InvalidParameter("macmahon_series needs m, n >= 1");
    TruncatedIntSeries s = TruncatedIntSeries::one(degree);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n && i + j - 1 <= degree; ++j) s.div_one_minus_x_pow(i + j - 1);
    }
    return s;
}

/// Unbounded board: prod_{s>=1} (1 - x^s)^{-s}; only factors with s <= degree matter.
inline TruncatedIntSeries macmahon_series_infinite(int degree) {
    return macmahon_series(degree, degree, degree);
}

/// Hook of each cell b of B\A: cells of B\A in its column toward the origin, plus those in its
/// row toward the origin, plus one. Listed in board (reference) order.
inline std::vector<int> hook_lengths(const Diagram& outer, const Diagram& hole = Diagram{}) {
    const Board2 board = skew_board(outer, hole);
    std::vector<int> hooks;
    hooks.reserve(static_cast<std::size_t>(board.size()));
    for (const auto& c : board.cells()) {
        int h = 1;
        for (int i = c[0] - 1; i >= 1 && !hole.contains(i, c[1]); --i) ++h;
        for (int j = c[1] - 1; j >= 1 && !hole.contains(c[0], j); --j) ++h;
        hooks.push_back(h);
    }
    return hooks;
}

namespace detail {

inline void require_rectangular(const Diagram& outer) {
    // The hook product counts skyscrapers on B\A only when B is a rectangle.
    if (!outer.is_rectangle()) throw InvalidParameter("hook-product formulas require a rectangular outer diagram B");
}

}  // namespace detail

/// prod_{b in B\A} 1/(1 - x^{h(b)}): skyscrapers on B\A by volume (B rectangular).
inline TruncatedIntSeries skew_series(const Diagram& outer, const Diagram& hole, int degree) {
    detail::require_rectangular(outer);
    TruncatedIntSeries s = TruncatedIntSeries::one(degree);
    for (int h : hook_lengths(outer, hole)) s.div_one_minus_x_pow(h);
    return s;
}

/// q-hook quotient prod_{l=1}^{|B\A|} (1 - x^l) / prod_b (1 - x^{h(b)}), divided exactly.
inline Polynomial pedestal_polynomial(const Diagram& outer, const Diagram& hole = Diagram{}) {
    detail::require_rectangular(outer);
    const auto hooks = hook_lengths(outer, hole);
    std::vector<int> steps(hooks.size());
    std::iota(steps.begin(), steps.end(), 1);
    auto div = poly_divmod(Polynomial::product_one_minus(steps), Polynomial::product_one_minus(hooks));
    if (!div.exact()) throw ContractViolation("q-hook quotient left a nonzero remainder");
    if (!div.quotient.has_nonnegative_coefficients()) throw ContractViolation("pedestal polynomial has a negative coefficient");
    return div.quotient;
}

/// sum over allowed orderings of x^{vol(pedestal)}: the pedestal polynomial counted directly.
template <std::size_t Dim>
Polynomial pedestal_polynomial_by_orderings(const Board<Dim>& board) {
    std::vector<BigInt> c;
    for_each_allowed_ordering(board, [&](const SiteOrdering& ord) {
        const auto v = static_cast<std::size_t>(pedestal_from_ordering(board, ord).volume());
        if (c.size() <= v) c.resize(v + 1);
        c[v] += 1;
    });
    return Polynomial(std::move(c));
}

template <std::size_t Dim>
BigInt count_allowed_orderings(const Board<Dim>& board) {
    BigInt n = 0;
    for_each_allowed_ordering(board, [&](const SiteOrdering&) { ++n; });
    return n;
}

inline constexpr int kSpatialGuard = 12;

/// Spatial partitions (3D arrays monotone in every index) in an m x n x k box, by volume.
inline TruncatedIntSeries spatial_series(int m, int n, int k, int degree, bool allow_large = false) {
    if (m < 1 || n < 1 || k < 1) throw InvalidParameter("box sides must be >= 1");
    if (m * n * k > kSpatialGuard && !allow_large) {
        throw GuardExceeded("spatial_series: box has " + std::to_string(m * n * k) + " cells, guard is " +
                            std::to_string(kSpatialGuard) + "; pass allow_large to override");
    }
    return level_set_series(Board3::box({m, n, k}), degree);
}

inline constexpr int kTrailingZeroWindow = 8;

/// g_4 * prod_{l=1}^{mnk} (1 - x^l). The degree is certified empirically: the series degree is
/// doubled until the product ends in at least kTrailingZeroWindow zero coefficients.
inline Polynomial spatial_pedestal_polynomial(int m, int n, int k, bool allow_large = false) {
    const int cells = m * n * k;
    for (int degree = 32;; degree *= 2) {
        TruncatedIntSeries s = spatial_series(m, n, k, degree, allow_large);
        for (int l = 1; l <= cells; ++l) s.mul_one_minus_x_pow(l);
        int last = degree;
        while (last >= 0 && s[last] == 0) --last;
        if (degree - last >= kTrailingZeroWindow) {
            Polynomial p(std::vector<BigInt>(s.coeffs().begin(), s.coeffs().begin() + (last + 1)));
            if (!p.has_nonnegative_coefficients()) throw ContractViolation("spatial pedestal polynomial has a negative coefficient");
            return p;
        }
        if (degree > 4096) throw ContractViolation("spatial pedestal polynomial support does not terminate");
    }
}

/// prod_{i,j,l} 1/(1 - x^{i+j+l-2}) over the m x n x k box: the conjectured 3D analogue of MacMahon.
inline TruncatedIntSeries naive_macmahon_4d(int m, int n, int k, int degree) {
    TruncatedIntSeries s = TruncatedIntSeries::one(degree);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j)
            for (int l = 1; l <= k; ++l)
                if (i + j + l - 2 <= degree) s.div_one_minus_x_pow(i + j + l - 2);
    return s;
}

struct RefutationReport {
    Polynomial pedestal;
    Polynomial remainder;  // of prod (1 - x^l) modulo the pedestal polynomial
    std::optional<int> first_mismatch_degree;
    BigInt true_coefficient;
    BigInt conjectured_coefficient;

    bool divisible() const { return remainder.is_zero(); }
};

inline RefutationReport macmahon_4d_refutation(int m, int n, int k) {
    RefutationReport r;
    r.pedestal = spatial_pedestal_polynomial(m, n, k);
    std::vector<int> steps(static_cast<std::size_t>(m * n * k));
    std::iota(steps.begin(), steps.end(), 1);
    r.remainder = poly_divmod(Polynomial::product_one_minus(steps), r.pedestal).remainder;
    constexpr int kDegree = 64;
    const auto truth = spatial_series(m, n, k, kDegree, true);
    const auto naive = naive_macmahon_4d(m, n, k, kDegree);
    for (int d = 0; d <= kDegree; ++d) {
        if (truth[d] != naive[d]) {
            r.first_mismatch_degree = d;
            r.true_coefficient = truth[d];
            r.conjectured_coefficient = naive[d];
            break;
        }
    }
    return r;
}

}  // namespace wulff::skyscraper
