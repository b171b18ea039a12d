#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wulff/series/int_series.hpp"

using wulff::BigInt;
using wulff::Polynomial;
using wulff::TruncatedIntSeries;

namespace {

TruncatedIntSeries random_sparse(std::mt19937_64& rng, int degree) {
    TruncatedIntSeries s(degree);
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<long long> val(-1000000000LL, 1000000000LL);
    for (int k = 0; k <= degree; ++k) {
        if (coin(rng) == 0) s[k] = BigInt(val(rng)) * BigInt(val(rng));
    }
    return s;
}

}  // namespace

TEST_CASE("geometric series times (1-x) is one", "[series]") {
    TruncatedIntSeries ones = TruncatedIntSeries::geometric(1, 20);
    TruncatedIntSeries one_minus_x(20, {1, -1});
    REQUIRE(ones * one_minus_x == TruncatedIntSeries::one(20));
}

TEST_CASE("(1-x^4)/(1-x^2) = 1 + x^2", "[series]") {
    TruncatedIntSeries num(12, {1, 0, 0, 0, -1});
    TruncatedIntSeries den(12, {1, 0, -1});
    REQUIRE(wulff::series_div(num, den) == TruncatedIntSeries(12, {1, 0, 1}));

    auto div = wulff::poly_divmod(Polynomial{1, 0, 0, 0, -1}, Polynomial{1, 0, -1});
    REQUIRE(div.exact());
    REQUIRE(div.quotient == Polynomial{1, 0, 1});
}

TEST_CASE("series division rejects a non-unit constant term", "[series]") {
    TruncatedIntSeries a = TruncatedIntSeries::one(5);
    TruncatedIntSeries b(5, {2, 1});
    REQUIRE_THROWS_AS(wulff::series_div(a, b), wulff::InvalidParameter);
}

TEST_CASE("inexact polynomial division reports a remainder", "[series]") {
    auto div = wulff::poly_divmod(Polynomial{1, 1, 1}, Polynomial{1, 1});
    REQUIRE_FALSE(div.exact());
    // a = q b + r
    REQUIRE(Polynomial{1, 1, 1} - div.quotient * Polynomial{1, 1} == div.remainder);
}

TEST_CASE("coefficients never overflow", "[series]") {
    TruncatedIntSeries s(200, {0, 1});
    s[0] = 1;
    TruncatedIntSeries p = TruncatedIntSeries::one(200);
    for (int i = 0; i < 200; ++i) p = p * s;  // (1+x)^200
    REQUIRE(p[100] == BigInt("90548514656103281165404177077484163874504589675413336841320"));
}

TEST_CASE("series ring laws on random sparse operands", "[series][property]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_sparse(rng, 30);
        auto b = random_sparse(rng, 30);
        auto c = random_sparse(rng, 30);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a * b).truncated(17) == a.truncated(17) * b.truncated(17));
        b[0] = 1;
        REQUIRE(wulff::series_div(a * b, b) == a);
    }
}

TEST_CASE("in-place (1 - x^s) factors invert each other", "[series]") {
    std::mt19937_64 rng(11);
    auto a = random_sparse(rng, 40);
    auto b = a;
    b.mul_one_minus_x_pow(3).div_one_minus_x_pow(3);
    REQUIRE(a == b);
}

TEST_CASE("polynomial pretty printing", "[series]") {
    REQUIRE(Polynomial{1, 0, 2, -1}.to_string() == "1 + 2x^2 - x^3");
    REQUIRE(Polynomial{}.to_string() == "0");
}
