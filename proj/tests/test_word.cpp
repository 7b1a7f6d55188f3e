#include <doctest.h>

#include <random>

#include "semroot/error.hpp"
#include "test_support.hpp"

using namespace semroot;
using semroot::testing::U;

TEST_CASE("utf8 decode counts code points") {
    CHECK(U("ktb").size() == 3);
    CHECK(U("كتب").size() == 3);
    CHECK(U("כתב").size() == 3);
    CHECK(U("ቀተለ").size() == 3);
    CHECK(utf8_encode(U("كاتب")) == "كاتب");
}

TEST_CASE("utf8 round trip over random code points") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::u32string s;
        for (int i = 0; i < 12; ++i) {
            char32_t cp = static_cast<char32_t>(rng() % 0x110000);
            if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0x41;
            s += cp;
        }
        CHECK(utf8_decode(utf8_encode(s)) == s);
    }
}

TEST_CASE("malformed utf8 is rejected") {
    for (std::string bad : {std::string("\xC3"), std::string("\xC0\xAF"), std::string("\xED\xA0\x80"),
                            std::string("a\xFFz"), std::string("\xE2\x82")}) {
        CHECK_THROWS_AS(utf8_decode(bad), Error);
    }
}

TEST_CASE("word validity") {
    CHECK(is_valid_word(U("maktab")));
    CHECK(is_valid_word(U("lilta`Ayu\\^s")));
    CHECK_FALSE(is_valid_word(U("")));
    CHECK_FALSE(is_valid_word(U("a b")));
    CHECK_FALSE(is_valid_word(U("a\tb")));
    CHECK_FALSE(is_valid_word(std::u32string(U"a\u0007")));
}

TEST_CASE("vocabulary hash depends on order and content") {
    auto a = testing::words({"ktb", "maktab"});
    auto b = testing::words({"maktab", "ktb"});
    CHECK(vocabulary_hash(a) == vocabulary_hash(a));
    CHECK(vocabulary_hash(a) != vocabulary_hash(b));
    CHECK(vocabulary_hash({}) != vocabulary_hash(testing::words({""})));
}
