#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "wulff/acceptance/reference_values.hpp"
#include "wulff/skyscraper/generating.hpp"

using namespace wulff;
using namespace wulff::skyscraper;
using partition::Partition;

namespace {

Heights grid2(const Board2& board, std::vector<std::vector<long long>> rows) {
    Heights h{std::vector<long long>(static_cast<std::size_t>(board.size()), 0)};
    for (int k = 0; k < board.size(); ++k) {
        const auto& c = board.cell(k);
        h.values[static_cast<std::size_t>(k)] = rows[static_cast<std::size_t>(c[0] - 1)][static_cast<std::size_t>(c[1] - 1)];
    }
    return h;
}

std::vector<Cell<2>> cells_of(const Board2& b, const SiteOrdering& o) {
    std::vector<Cell<2>> out;
    for (int k : o.sequence) out.push_back(b.cell(k));
    return out;
}

Polynomial poly(const std::vector<long long>& c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return Polynomial(std::move(v));
}

}  // namespace

TEST_CASE("diagram validation", "[skyscraper]") {
    REQUIRE_THROWS_AS(Diagram({1, 2}), InvalidParameter);
    REQUIRE_THROWS_AS(skew_board(Diagram({1}), Diagram({2})), InvalidParameter);
    REQUIRE(Diagram::rectangle(2, 3).size() == 6);
    REQUIRE(Diagram({3, 3}).is_rectangle());
    REQUIRE_FALSE(Diagram({3, 1}).is_rectangle());
}

TEST_CASE("flatten", "[skyscraper]") {
    Board2 b = skew_board(Diagram::rectangle(2, 2));
    REQUIRE(flatten(grid2(b, {{2, 1}, {1, 0}})) == Partition({2, 1, 1}));
    REQUIRE(flatten(grid2(b, {{0, 0}, {0, 0}})).empty());
}

TEST_CASE("reference ordering", "[skyscraper]") {
    Board2 b = skew_board(Diagram::rectangle(2, 2));
    auto ref = reference_ordering(b);
    REQUIRE(cells_of(b, ref) == std::vector<Cell<2>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    Board2 row = skew_board(Diagram::rectangle(1, 3));
    REQUIRE(cells_of(row, reference_ordering(row)) == std::vector<Cell<2>>{{1, 1}, {1, 2}, {1, 3}});

    // every allowed ordering on a hole-free board starts at (1,1)
    for_each_allowed_ordering(skew_board(Diagram({3, 2, 1})), [&](const SiteOrdering& o) {
        REQUIRE(o.sequence.front() == 0);
    });
    REQUIRE_FALSE(is_allowed(b, SiteOrdering{{1, 0, 2, 3}}));
}

TEST_CASE("ordering from a skyscraper", "[skyscraper]") {
    Board2 b = skew_board(Diagram::rectangle(2, 2));
    REQUIRE(ordering_from_skyscraper(b, grid2(b, {{0, 0}, {0, 0}})) == reference_ordering(b));
    auto strict = ordering_from_skyscraper(b, grid2(b, {{3, 1}, {2, 0}}));
    REQUIRE(cells_of(b, strict) == std::vector<Cell<2>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}});
    // equivalent skyscrapers share an ordering
    REQUIRE(ordering_from_skyscraper(b, grid2(b, {{2, 1}, {1, 0}})) ==
            ordering_from_skyscraper(b, grid2(b, {{3, 2}, {2, 1}})));
    REQUIRE_THROWS_AS(ordering_from_skyscraper(b, grid2(b, {{0, 1}, {0, 0}})), InvalidParameter);
}

TEST_CASE("pedestals on the 2x2 board", "[skyscraper]") {
    Board2 b = skew_board(Diagram::rectangle(2, 2));
    auto zero = pedestal_from_ordering(b, reference_ordering(b));
    REQUIRE(zero.volume() == 0);

    std::set<Heights> peds;
    std::vector<long long> vols;
    for_each_allowed_ordering(b, [&](const SiteOrdering& o) {
        auto p = pedestal_from_ordering(b, o);
        REQUIRE(b.is_monotone(p.values));
        REQUIRE(ordering_from_skyscraper(b, p) == o);  // fixed point
        peds.insert(p);
        vols.push_back(p.volume());
    });
    REQUIRE(peds.size() == 2);
    REQUIRE(pedestal_polynomial_by_orderings(b) == Polynomial{1, 0, 1});
    REQUIRE_THROWS_AS(pedestal_from_ordering(b, SiteOrdering{{3, 2, 1, 0}}), InvalidParameter);
}

TEST_CASE("pedestal is pointwise minimal in its class", "[skyscraper][property]") {
    Board2 b = skew_board(Diagram::rectangle(3, 3));
    for_each_skyscraper(b, 7, [&](const Heights& s) {
        auto p = pedestal_from_ordering(b, ordering_from_skyscraper(b, s));
        for (std::size_t k = 0; k < s.values.size(); ++k) REQUIRE(p.values[k] <= s.values[k]);
    });
}

TEST_CASE("Stanley bijection round trips", "[skyscraper]") {
    Board2 b22 = skew_board(Diagram::rectangle(2, 2));
    auto zero = stanley_forward(b22, grid2(b22, {{0, 0}, {0, 0}}));
    REQUIRE(zero.pedestal.volume() == 0);
    REQUIRE(zero.parts.empty());

    long long count = 0;
    for_each_skyscraper(b22, 8, [&](const Heights& s) {
        auto pair = stanley_forward(b22, s);
        REQUIRE(pair.pedestal.volume() + pair.parts.volume() == s.volume());
        REQUIRE(stanley_inverse(b22, pair.pedestal, pair.parts) == s);
        ++count;
    });
    REQUIRE(count > 0);

    REQUIRE_THROWS_AS(stanley_inverse(b22, Heights{{0, 0, 0, 0}}, Partition({1, 1, 1, 1, 1})), InvalidParameter);
}

TEST_CASE("Stanley bijection on a skew board", "[skyscraper]") {
    Board2 b = skew_board(Diagram::rectangle(3, 3), Diagram({2, 1}));
    for_each_skyscraper(b, 9, [&](const Heights& s) {
        auto pair = stanley_forward(b, s);
        REQUIRE(stanley_inverse(b, pair.pedestal, pair.parts) == s);
    });
}

TEST_CASE("MacMahon series", "[skyscraper]") {
    REQUIRE(macmahon_series(1, 1, 20) == TruncatedIntSeries::geometric(1, 20));
    auto inf = macmahon_series_infinite(20);
    REQUIRE(inf[0] == 1);
    REQUIRE(inf[1] == 1);
    REQUIRE(inf[2] == 3);
    REQUIRE(inf[3] == 6);
    // unbounded plane partitions of N <= 8 live inside an 8x8 board
    REQUIRE(inf.truncated(8) == brute_force_series(skew_board(Diagram::rectangle(8, 8)), 8));
    REQUIRE(macmahon_series(2, 2, 16) == brute_force_series(skew_board(Diagram::rectangle(2, 2)), 16));
}

TEST_CASE("hook lengths", "[skyscraper]") {
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    REQUIRE(sorted(hook_lengths(Diagram::rectangle(2, 2))) == std::vector<int>{1, 2, 2, 3});
    REQUIRE(hook_lengths(Diagram({1})) == std::vector<int>{1});
    REQUIRE(sorted(hook_lengths(Diagram::rectangle(3, 3))) == std::vector<int>{1, 2, 2, 3, 3, 3, 4, 4, 5});
    REQUIRE(sorted(hook_lengths(Diagram::rectangle(2, 2), Diagram({1}))) == std::vector<int>{1, 1, 3});
}

TEST_CASE("skew series", "[skyscraper]") {
    TruncatedIntSeries expect = TruncatedIntSeries::one(30);
    expect.div_one_minus_x_pow(1).div_one_minus_x_pow(2).div_one_minus_x_pow(2).div_one_minus_x_pow(3);
    REQUIRE(skew_series(Diagram::rectangle(2, 2), Diagram{}, 30) == expect);
    REQUIRE(skew_series(Diagram::rectangle(3, 4), Diagram{}, 30) == macmahon_series(3, 4, 30));

    Board2 l_shape = skew_board(Diagram::rectangle(2, 2), Diagram({1}));
    REQUIRE(skew_series(Diagram::rectangle(2, 2), Diagram({1}), 10) == brute_force_series(l_shape, 10));
    REQUIRE(skew_series(Diagram::rectangle(2, 2), Diagram::rectangle(2, 2), 10) == TruncatedIntSeries::one(10));
    REQUIRE_THROWS_AS(skew_series(Diagram({2, 1}), Diagram{}, 10), InvalidParameter);
}

TEST_CASE("hook products fail off rectangles", "[skyscraper]") {
    // B = (2,1): a >= b, a >= c has 4 skyscrapers of volume 3, while 1/((1-x)(1-x^2)^2) predicts 3.
    Board2 b = skew_board(Diagram({2, 1}));
    REQUIRE(brute_force_series(b, 3)[3] == 4);
}

TEST_CASE("pedestal polynomial by q-hook quotient", "[skyscraper]") {
    REQUIRE(pedestal_polynomial(Diagram::rectangle(2, 2)) == Polynomial{1, 0, 1});
    REQUIRE(pedestal_polynomial(Diagram::rectangle(2, 2)).value_at_one() == 2);
    REQUIRE(pedestal_polynomial(Diagram({1})) == Polynomial{1});
    // hook formula: 9! / (1*2*2*3*3*3*4*4*5) = 42 standard tableaux of the 3x3 square
    REQUIRE(pedestal_polynomial(Diagram::rectangle(3, 3)).value_at_one() == 42);
}

TEST_CASE("pedestal polynomial agrees with ordering enumeration", "[skyscraper][property]") {
    const std::vector<std::pair<Diagram, Diagram>> shapes = {
        {Diagram::rectangle(2, 3), Diagram{}},      {Diagram::rectangle(3, 3), Diagram{}},
        {Diagram::rectangle(3, 3), Diagram({2, 1})}, {Diagram::rectangle(3, 4), Diagram({3, 1})},
        {Diagram::rectangle(2, 4), Diagram({1})},
    };
    for (const auto& [outer, hole] : shapes) {
        Board2 b = skew_board(outer, hole);
        REQUIRE(pedestal_polynomial(outer, hole) == pedestal_polynomial_by_orderings(b));
        REQUIRE(pedestal_polynomial(outer, hole).value_at_one() == count_allowed_orderings(b));
    }
}

TEST_CASE("level-set DP equals brute force", "[skyscraper]") {
    REQUIRE(level_set_series(skew_board(Diagram({3, 2, 1})), 14) == brute_force_series(skew_board(Diagram({3, 2, 1})), 14));
    Board3 box = Board3::box({2, 2, 2});
    REQUIRE(level_set_series(box, 12) == brute_force_series(box, 12));
}

TEST_CASE("spatial series", "[skyscraper]") {
    REQUIRE(spatial_series(1, 1, 1, 20) == TruncatedIntSeries::geometric(1, 20));
    auto s222 = spatial_series(2, 2, 2, 10);
    auto s223 = spatial_series(2, 2, 3, 10);
    for (int d = 0; d <= 10; ++d) {
        REQUIRE(s222[d] == reference::kSpatial222[static_cast<std::size_t>(d)]);
        REQUIRE(s223[d] == reference::kSpatial223[static_cast<std::size_t>(d)]);
    }
    REQUIRE_THROWS_AS(spatial_series(2, 2, 4, 10), GuardExceeded);
    REQUIRE_NOTHROW(spatial_series(2, 2, 4, 10, true));
}

TEST_CASE("spatial pedestal polynomials", "[skyscraper]") {
    auto p222 = spatial_pedestal_polynomial(2, 2, 2);
    REQUIRE(p222 == poly(reference::kPedestal222));
    REQUIRE(p222.value_at_one() == 48);
    REQUIRE(count_allowed_orderings(Board3::box({2, 2, 2})) == 48);
    REQUIRE(pedestal_polynomial_by_orderings(Board3::box({2, 2, 2})) == p222);
    REQUIRE(p222.is_palindromic());

    auto p223 = spatial_pedestal_polynomial(2, 2, 3);
    REQUIRE(p223 == poly(reference::kPedestal223));
    REQUIRE(p223.is_palindromic());
    REQUIRE(pedestal_polynomial_by_orderings(Board3::box({2, 2, 3})) == p223);
}

TEST_CASE("naive 4D MacMahon product is refuted", "[skyscraper]") {
    for (auto [m, n, k] : {std::tuple{2, 2, 2}, std::tuple{2, 2, 3}}) {
        auto r = macmahon_4d_refutation(m, n, k);
        REQUIRE_FALSE(r.divisible());
        REQUIRE(r.first_mismatch_degree.has_value());
        REQUIRE(r.true_coefficient != r.conjectured_coefficient);
    }
}
