#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncsaito/errors.hpp"
#include "ncsaito/parser.hpp"

using namespace ncsaito;

namespace {

const std::vector<std::string> kXY{"x", "y"};

Series mono(int n, int N, const Word& w, const Rat& c = 1) {
    return Series::monomial(n, N, w, c);
}

}  // namespace

TEST_CASE("single variables and powers") {
    CHECK(parse_series("x", kXY, 6) == mono(2, 6, {0}));
    CHECK(parse_series("y^3", kXY, 6) == mono(2, 6, {1, 1, 1}));
    CHECK(parse_series("x^2*y", kXY, 6) == mono(2, 6, {0, 0, 1}));
}

TEST_CASE("coefficients, rationals and signs") {
    CHECK(parse_series("3*x", kXY, 6) == mono(2, 6, {0}, 3));
    CHECK(parse_series("1/2*x*y", kXY, 6) == mono(2, 6, {0, 1}, Rat(1, 2)));
    CHECK(parse_series("-x + 2*y", kXY, 6) == mono(2, 6, {0}, -1) + mono(2, 6, {1}, 2));
    CHECK(parse_series("x - x", kXY, 6).is_zero());
    CHECK(parse_series("+x", kXY, 6) == mono(2, 6, {0}));
}

TEST_CASE("word order is preserved") {
    CHECK(parse_series("x*y", kXY, 6) != parse_series("y*x", kXY, 6));
    CHECK(parse_series("x*y*x", kXY, 6) == mono(2, 6, {0, 1, 0}));
}

TEST_CASE("whitespace is insignificant") {
    CHECK(parse_series("  x ^ 2  +  3 * y ", kXY, 6) ==
          mono(2, 6, {0, 0}) + mono(2, 6, {1}, 3));
}

TEST_CASE("terms beyond the truncation are dropped") {
    CHECK(parse_series("x^7 + x", kXY, 6) == mono(2, 6, {0}));
}

TEST_CASE("juxtaposition is not implicit multiplication") {
    // "xy" lexes as one unknown identifier.
    CHECK_THROWS_AS(parse_series("xy", kXY, 6), Error);
    try {
        parse_series("xy", kXY, 6);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownVariable);
    }
    // A coefficient also needs an explicit '*'.
    CHECK_THROWS_AS(parse_series("2x", kXY, 6), Error);
    try {
        parse_series("2x", kXY, 6);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("malformed input reports the byte offset") {
    try {
        parse_series("x + ", kXY, 6);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("byte 4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_series("", kXY, 6), Error);
    CHECK_THROWS_AS(parse_series("x^", kXY, 6), Error);
    CHECK_THROWS_AS(parse_series("1/0*x", kXY, 6), Error);
    CHECK_THROWS_AS(parse_series("x**y", kXY, 6), Error);
}

TEST_CASE("multi-character variable names") {
    std::vector<std::string> vars{"alpha", "beta"};
    CHECK(parse_series("alpha*beta^2", vars, 5) == mono(2, 5, {0, 1, 1}));
}

TEST_CASE("word_to_string compresses runs") {
    CHECK(word_to_string({}, kXY) == "1");
    CHECK(word_to_string({0, 0, 1, 0}, kXY) == "x^2*y*x");
}

TEST_CASE("series_to_string formats signs and coefficients") {
    Series f = mono(2, 6, {0}, -1) + mono(2, 6, {0, 1}, Rat(1, 2)) + mono(2, 6, {1, 1}, 1);
    CHECK(series_to_string(f, kXY) == "-x + 1/2*x*y + y^2");
    CHECK(series_to_string(Series::zero(2, 6), kXY) == "0");
}

TEST_CASE("printing and reparsing round-trips") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> deg(0, 5);
    std::uniform_int_distribution<int> letter(0, 1);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    for (int trial = 0; trial < 15; ++trial) {
        Series f(2, 6);
        for (int t = 0; t < 6; ++t) {
            Word w(static_cast<std::size_t>(deg(rng)));
            for (int& l : w) l = letter(rng);
            f.add_term(w, Rat(num(rng), den(rng)));
        }
        if (f.is_zero()) continue;
        CHECK(parse_series(series_to_string(f, kXY), kXY, 6) == f);
    }
}
