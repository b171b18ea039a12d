#include <catch2/catch_amalgamated.hpp>

#include "wulff/io/emit.hpp"

using namespace wulff;
using namespace wulff::io;

TEST_CASE("number formatting") {
    REQUIRE(number(1.0 / 3.0) == "0.333333333333");
    REQUIRE(number(1.0 / 3.0, kSvgDigits) == "0.333333333");
    REQUIRE(number(-0.0) == "0");
    REQUIRE(number(2.5e-20) == "2.5e-20");
    REQUIRE(number(4.0) == "4");
}

TEST_CASE("csv artifacts") {
    REQUIRE(points_csv(std::vector<Vec2>{{0, 1}, {0.5, -2}}) == "x,y\n0,1\n0.5,-2\n");
    REQUIRE(coefficients_csv({BigInt(1), BigInt("123456789012345678901234567890")}) ==
            "degree,coefficient\n0,1\n1,123456789012345678901234567890\n");
    CsvWriter w({"id", "detail"});
    w.row(std::vector<std::string>{"1", "a, \"b\""});
    REQUIRE(w.str() == "id,detail\n1,\"a, \"\"b\"\"\"\n");
    REQUIRE_THROWS_AS(w.row(std::vector<std::string>{"1"}), ContractViolation);
}

TEST_CASE("svg uses the fixed viewBox") {
    const std::string s = svg({{{{1, 0}, {0, 1}, {-1, 0}}, true}}, 2.0);
    REQUIRE(s.find("viewBox=\"-2.4 -2.4 4.8 4.8\"") != std::string::npos);
    REQUIRE(s.find("points=\"1,0 0,1 -1,0\"") != std::string::npos);
    REQUIRE(s.find('\r') == std::string::npos);
    REQUIRE_THROWS_AS(svg({}, 0.0), InvalidParameter);
}

TEST_CASE("pgm snapshot") {
    // site (x, y) = (1, 0) is plus; the bottom row is printed last
    REQUIRE(pgm({-1, 1, -1, -1}, 2) == "P2\n2 2\n255\n0 0\n0 255\n");
    REQUIRE_THROWS_AS(pgm({1, 1, 1}, 2), InvalidParameter);
}

TEST_CASE("fnv1a digests") {
    REQUIRE(fnv1a("") == "cbf29ce484222325");
    REQUIRE(fnv1a("a") == "af63dc4c8601ec8c");
    REQUIRE(fnv1a("foobar") == "85944171f73967e8");
}
