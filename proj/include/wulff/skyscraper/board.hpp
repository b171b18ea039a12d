#pragma once

// Lattice boards (skew diagrams B\A and boxes), monotone height arrays on them,
// site orderings, pedestals and the skyscraper <-> (pedestal, partition) bijection.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "wulff/core/errors.hpp"
#include "wulff/partition/partition.hpp"

namespace wulff::skyscraper {

/// Young diagram given by its (non-increasing) row lengths. Cell (i, j) is 1-based.
class Diagram {
public:
    Diagram() = default;

    explicit Diagram(std::vector<int> rows) : rows_(std::move(rows)) {
        while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
        for (int r : rows_) {
            if (r < 0) throw InvalidParameter("diagram row lengths must be non-negative");
        }
        if (!std::is_sorted(rows_.begin(), rows_.end(), std::greater<>{})) {
            throw InvalidParameter("diagram rows must be non-increasing (Young-diagram shape)");
        }
    }

    static Diagram rectangle(int m, int n) {
        if (m < 0 || n < 0) throw InvalidParameter("rectangle sides must be non-negative");
        return Diagram(std::vector<int>(static_cast<std::size_t>(n > 0 ? m : 0), n));
    }

    const std::vector<int>& rows() const { return rows_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    int num_cols() const { return rows_.empty() ? 0 : rows_.front(); }

    bool contains(int i, int j) const {
        return i >= 1 && i <= num_rows() && j >= 1 && j <= rows_[static_cast<std::size_t>(i - 1)];
    }

    int size() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }

    bool is_rectangle() const {
        return std::all_of(rows_.begin(), rows_.end(), [&](int r) { return r == num_cols(); });
    }

    bool contains(const Diagram& inner) const {
        if (inner.num_rows() > num_rows()) return false;
        for (int i = 1; i <= inner.num_rows(); ++i) {
            if (inner.rows_[static_cast<std::size_t>(i - 1)] > rows_[static_cast<std::size_t>(i - 1)]) return false;
        }
        return true;
    }

    bool operator==(const Diagram&) const = default;

private:
    std::vector<int> rows_;
};

template <std::size_t Dim>
using Cell = std::array<int, Dim>;

/// Finite set of lattice sites carrying the product order. Heights on a board must be
/// non-increasing away from the origin. Cells are stored in the reference ordering
/// (coordinate sum ascending, ties lexicographic), so a cell's index is its reference rank.
template <std::size_t Dim>
class Board {
public:
    explicit Board(std::vector<Cell<Dim>> cells) : cells_(std::move(cells)) {
        std::sort(cells_.begin(), cells_.end(), [](const Cell<Dim>& a, const Cell<Dim>& b) {
            const int sa = std::accumulate(a.begin(), a.end(), 0);
            const int sb = std::accumulate(b.begin(), b.end(), 0);
            return sa != sb ? sa < sb : a < b;
        });
        if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
            throw InvalidParameter("board cells must be distinct");
        }
        for (std::size_t k = 0; k < cells_.size(); ++k) index_[cells_[k]] = static_cast<int>(k);
        preds_.resize(cells_.size());
        succs_.resize(cells_.size());
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            for (std::size_t d = 0; d < Dim; ++d) {
                Cell<Dim> c = cells_[k];
                --c[d];
                if (auto it = index_.find(c); it != index_.end()) {
                    preds_[k].push_back(it->second);
                    succs_[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(k));
                }
            }
        }
    }

    /// Box [1..e_1] x ... x [1..e_Dim].
    static Board box(const Cell<Dim>& extents) {
        std::vector<Cell<Dim>> cells;
        Cell<Dim> c;
        c.fill(1);
        for (int e : extents) {
            if (e < 1) throw InvalidParameter("box extents must be >= 1");
        }
        while (true) {
            cells.push_back(c);
            std::size_t d = 0;
            while (d < Dim && ++c[d] > extents[d]) c[d++] = 1;
            if (d == Dim) break;
        }
        return Board(std::move(cells));
    }

    int size() const { return static_cast<int>(cells_.size()); }
    const Cell<Dim>& cell(int k) const { return cells_[static_cast<std::size_t>(k)]; }
    const std::vector<Cell<Dim>>& cells() const { return cells_; }
    /// Neighbours one step closer to the origin; their heights bound this cell's height from above.
    const std::vector<int>& predecessors(int k) const { return preds_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& successors(int k) const { return succs_[static_cast<std::size_t>(k)]; }

    std::optional<int> index_of(const Cell<Dim>& c) const {
        auto it = index_.find(c);
        return it == index_.end() ? std::nullopt : std::optional<int>(it->second);
    }

    bool is_monotone(const std::vector<long long>& heights) const {
        if (heights.size() != cells_.size()) return false;
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            if (heights[k] < 0) return false;
            for (int p : preds_[k]) {
                if (heights[static_cast<std::size_t>(p)] < heights[k]) return false;
            }
        }
        return true;
    }

private:
    std::vector<Cell<Dim>> cells_;
    std::map<Cell<Dim>, int> index_;
    std::vector<std::vector<int>> preds_;
    std::vector<std::vector<int>> succs_;
};

using Board2 = Board<2>;
using Board3 = Board<3>;

/// Board of the skew region B\A. Both must be Young diagrams with A inside B.
inline Board2 skew_board(const Diagram& outer, const Diagram& hole = Diagram{}) {
    if (!outer.contains(hole)) throw InvalidParameter("hole diagram A must lie inside B");
    std::vector<Cell<2>> cells;
    for (int i = 1; i <= outer.num_rows(); ++i) {
        for (int j = 1; j <= outer.rows()[static_cast<std::size_t>(i - 1)]; ++j) {
            if (!hole.contains(i, j)) cells.push_back({i, j});
        }
    }
    return Board2(std::move(cells));
}

/// Monotone height array on a board; heights[k] belongs to board.cell(k).
/// On a 2D board this is a plane partition (skyscraper), on a 3D box a spatial partition.
struct Heights {
    std::vector<long long> values;

    long long volume() const { return std::accumulate(values.begin(), values.end(), 0LL); }
    bool operator==(const Heights&) const = default;
    auto operator<=>(const Heights&) const = default;
};

/// Lists all entries in non-increasing order, dropping zeros.
inline partition::Partition flatten(const Heights& s) {
    std::vector<int> parts;
    for (long long v : s.values) {
        if (v > 0) parts.push_back(static_cast<int>(v));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>{});
    return partition::Partition(std::move(parts));
}

/// Total order on the board sites, stored as the sequence of cell indices from first to last.
struct SiteOrdering {
    std::vector<int> sequence;

    bool operator==(const SiteOrdering&) const = default;
};

/// Allowed orderings are exactly the linear extensions of the board order: heights k-l on the
/// first l sites give a monotone array iff every site comes after its predecessors.
template <std::size_t Dim>
bool is_allowed(const Board<Dim>& board, const SiteOrdering& ord) {
    if (static_cast<int>(ord.sequence.size()) != board.size()) return false;
    std::vector<int> pos(static_cast<std::size_t>(board.size()), -1);
    for (std::size_t t = 0; t < ord.sequence.size(); ++t) {
        const int k = ord.sequence[t];
        if (k < 0 || k >= board.size() || pos[static_cast<std::size_t>(k)] != -1) return false;
        pos[static_cast<std::size_t>(k)] = static_cast<int>(t);
    }
    for (int k = 0; k < board.size(); ++k) {
        for (int p : board.predecessors(k)) {
            if (pos[static_cast<std::size_t>(p)] > pos[static_cast<std::size_t>(k)]) return false;
        }
    }
    return true;
}

/// The fixed reference ordering: coordinate sum ascending, ties by first coordinate.
template <std::size_t Dim>
SiteOrdering reference_ordering(const Board<Dim>& board) {
    SiteOrdering ord;
    ord.sequence.resize(static_cast<std::size_t>(board.size()));
    std::iota(ord.sequence.begin(), ord.sequence.end(), 0);
    if (!is_allowed(board, ord)) throw ContractViolation("reference ordering is not allowed");
    return ord;
}

/// Heights descending, ties broken by the reference ordering.
template <std::size_t Dim>
SiteOrdering ordering_from_skyscraper(const Board<Dim>& board, const Heights& s) {
    if (!board.is_monotone(s.values)) throw InvalidParameter("heights are not monotone on the board");
    SiteOrdering ord = reference_ordering(board);
    std::stable_sort(ord.sequence.begin(), ord.sequence.end(), [&](int a, int b) {
        return s.values[static_cast<std::size_t>(a)] > s.values[static_cast<std::size_t>(b)];
    });
    return ord;
}

/// Minimal skyscraper inducing `ord`. Scanning backwards from the last site (height 0), the height
/// increases by one each time `ord` places a site before one that the reference ordering puts first.
template <std::size_t Dim>
Heights pedestal_from_ordering(const Board<Dim>& board, const SiteOrdering& ord) {
    if (!is_allowed(board, ord)) throw InvalidParameter("ordering is not allowed on this board");
    Heights p{std::vector<long long>(static_cast<std::size_t>(board.size()), 0)};
    for (int t = board.size() - 2; t >= 0; --t) {
        const int cur = ord.sequence[static_cast<std::size_t>(t)];
        const int next = ord.sequence[static_cast<std::size_t>(t + 1)];
        // cell index == reference rank
        p.values[static_cast<std::size_t>(cur)] = p.values[static_cast<std::size_t>(next)] + (cur > next ? 1 : 0);
    }
    return p;
}

struct StanleyPair {
    Heights pedestal;
    partition::Partition parts;
};

/// S -> (pedestal of S, flatten(S - pedestal)). Volume additive.
template <std::size_t Dim>
StanleyPair stanley_forward(const Board<Dim>& board, const Heights& s) {
    SiteOrdering ord = ordering_from_skyscraper(board, s);
    Heights ped = pedestal_from_ordering(board, ord);
    Heights diff = s;
    for (std::size_t k = 0; k < diff.values.size(); ++k) {
        diff.values[k] -= ped.values[k];
        if (diff.values[k] < 0) throw ContractViolation("skyscraper lies below its pedestal");
    }
    return {std::move(ped), flatten(diff)};
}

/// (P, p) -> P + (p laid along the ordering induced by P).
template <std::size_t Dim>
Heights stanley_inverse(const Board<Dim>& board, const Heights& pedestal, const partition::Partition& p) {
    if (p.num_parts() > board.size()) {
        throw InvalidParameter("partition has more parts than the board has sites");
    }
    SiteOrdering ord = ordering_from_skyscraper(board, pedestal);
    Heights s = pedestal;
    for (int k = 0; k < p.num_parts(); ++k) {
        s.values[static_cast<std::size_t>(ord.sequence[static_cast<std::size_t>(k)])] += p.parts()[static_cast<std::size_t>(k)];
    }
    return s;
}

/// Calls `visit` on every allowed ordering (linear extension) of the board.
template <std::size_t Dim>
void for_each_allowed_ordering(const Board<Dim>& board, const std::function<void(const SiteOrdering&)>& visit) {
    const int n = board.size();
    std::vector<int> missing(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) missing[static_cast<std::size_t>(k)] = static_cast<int>(board.predecessors(k).size());
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    SiteOrdering ord;
    ord.sequence.reserve(static_cast<std::size_t>(n));
    std::function<void()> rec = [&]() {
        if (static_cast<int>(ord.sequence.size()) == n) {
            visit(ord);
            return;
        }
        for (int k = 0; k < n; ++k) {
            if (used[static_cast<std::size_t>(k)] || missing[static_cast<std::size_t>(k)] != 0) continue;
            used[static_cast<std::size_t>(k)] = 1;
            for (int s : board.successors(k)) --missing[static_cast<std::size_t>(s)];
            ord.sequence.push_back(k);
            rec();
            ord.sequence.pop_back();
            for (int s : board.successors(k)) ++missing[static_cast<std::size_t>(s)];
            used[static_cast<std::size_t>(k)] = 0;
        }
    };
    rec();
}

/// Brute-force enumeration of monotone height arrays with volume <= max_volume.
template <std::size_t Dim>
void for_each_skyscraper(const Board<Dim>& board, long long max_volume, const std::function<void(const Heights&)>& visit) {
    const int n = board.size();
    Heights s{std::vector<long long>(static_cast<std::size_t>(n), 0)};
    std::function<void(int, long long)> rec = [&](int k, long long budget) {
        if (k == n) {
            visit(s);
            return;
        }
        long long cap = budget;
        for (int p : board.predecessors(k)) cap = std::min(cap, s.values[static_cast<std::size_t>(p)]);
        for (long long h = 0; h <= cap; ++h) {
            s.values[static_cast<std::size_t>(k)] = h;
            rec(k + 1, budget - h);
        }
        s.values[static_cast<std::size_t>(k)] = 0;
    };
    rec(0, max_volume);
}

/// Series of brute-force skyscraper counts by volume.
template <std::size_t Dim>
TruncatedIntSeries brute_force_series(const Board<Dim>& board, int degree) {
    TruncatedIntSeries s(degree);
    for_each_skyscraper(board, degree, [&](const Heights& h) { s[static_cast<int>(h.volume())] += 1; });
    return s;
}

/// Order ideals (down-closed cell sets) of the board as bitmasks, sorted by size.
template <std::size_t Dim>
std::vector<std::uint64_t> order_ideals(const Board<Dim>& board) {
    if (board.size() > 64) throw InvalidParameter("order_ideals supports at most 64 sites");
    std::vector<std::uint64_t> ideals{0};
    std::vector<std::uint64_t> frontier{0};
    std::vector<std::uint64_t> next;
    while (!frontier.empty()) {
        next.clear();
        for (std::uint64_t ideal : frontier) {
            for (int k = 0; k < board.size(); ++k) {
                const std::uint64_t bit = std::uint64_t{1} << k;
                if (ideal & bit) continue;
                const auto& preds = board.predecessors(k);
                if (std::all_of(preds.begin(), preds.end(), [&](int p) { return (ideal >> p) & 1U; })) {
                    next.push_back(ideal | bit);
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        ideals.insert(ideals.end(), next.begin(), next.end());
        frontier.swap(next);
    }
    return ideals;
}

/// Generating function of monotone height arrays by volume, computed by dynamic programming
/// over the chain of level sets {height >= 1} >= {height >= 2} >= ..., each an order ideal.
template <std::size_t Dim>
TruncatedIntSeries level_set_series(const Board<Dim>& board, int degree) {
    const auto ideals = order_ideals(board);
    // chains[i]: weighted count of level-set chains whose top element is ideals[i]
    std::vector<TruncatedIntSeries> chains;
    chains.reserve(ideals.size());
    TruncatedIntSeries total = TruncatedIntSeries::one(degree);
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        const int size = std::popcount(ideals[i]);
        if (size == 0) {
            chains.emplace_back(degree);
            continue;
        }
        TruncatedIntSeries acc = TruncatedIntSeries::one(degree);
        for (std::size_t j = 0; j < i; ++j) {
            if (ideals[j] != 0 && (ideals[j] & ~ideals[i]) == 0 && ideals[j] != ideals[i]) acc += chains[j];
        }
        acc.shift(size).div_one_minus_x_pow(size);
        total += acc;
        chains.push_back(std::move(acc));
    }
    return total;
}

}  // namespace wulff::skyscraper
