#include <doctest.h>

#include <random>
#include <sstream>

#include "semroot/error.hpp"
#include "semroot/evalharness.hpp"
#include "test_support.hpp"

using namespace semroot;
using semroot::testing::U;

namespace {

RootMap roots(std::initializer_list<std::pair<const char*, const char*>> items) {
    RootMap m;
    for (const auto& [w, r] : items) m.emplace(U(w), U(r));
    return m;
}

}  // namespace

TEST_CASE("identical systems never beat each other") {
    auto gold = roots({{"maktab", "ktb"}, {"kAtib", "ktb"}, {"almazhab", "zhb"}});
    auto pred = roots({{"maktab", "ktb"}, {"kAtib", "kAtib"}, {"almazhab", "zhb"}});
    std::vector<SystemPredictions> s{{"a", pred}, {"b", pred}};
    auto r = evaluate(s, gold);
    CHECK(r.n == 3);
    CHECK(r.correct == std::vector<std::size_t>{2, 2});
    CHECK(r.accuracy[0] == doctest::Approx(2.0 / 3.0));
    CHECK(r.better == std::vector<std::vector<std::size_t>>{{0, 0}, {0, 0}});
}

TEST_CASE("hand-built pairwise matrix") {
    auto gold = roots({{"w1", "r1"}, {"w2", "r2"}, {"w3", "r3"}, {"w4", "r4"}});
    auto a = roots({{"w1", "r1"}, {"w2", "r2"}, {"w3", "x"}, {"w4", "x"}});
    auto b = roots({{"w1", "r1"}, {"w2", "x"}, {"w3", "r3"}, {"w4", "x"}});
    std::vector<SystemPredictions> s{{"A", a}, {"B", b}};
    auto r = evaluate(s, gold);
    CHECK(r.better == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}});
    CHECK(format_report(r) ==
          "system\tcorrect\tn\taccuracy\n"
          "A\t2\t4\t50.00%\n"
          "B\t2\t4\t50.00%\n"
          "\n"
          "better\\worse\tA\tB\n"
          "A\t0\t1\n"
          "B\t1\t0\n");
    auto j = report_json(r);
    CHECK(j["n"] == 4);
    CHECK(j["better"][0][1] == 1);
    CHECK(j["systems"][1]["name"] == "B");
}

TEST_CASE("matrix identities on random systems") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        RootMap gold;
        const std::size_t n = 1 + rng() % 30;
        for (std::size_t i = 0; i < n; ++i) gold.emplace(U("w" + std::to_string(i)), U("r"));
        std::vector<SystemPredictions> s(3);
        for (std::size_t k = 0; k < 3; ++k) {
            s[k].name = "s" + std::to_string(k);
            for (const auto& [w, _] : gold) s[k].roots.emplace(w, rng() % 2 ? U("r") : U("q"));
        }
        auto r = evaluate(s, gold);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(r.better[i][i] == 0);
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(r.better[i][j] - r.better[j][i] + r.correct[j] == r.correct[i]);
                std::size_t disagree = 0;
                for (const auto& [w, _] : gold) disagree += (s[i].roots.at(w) == U("r")) != (s[j].roots.at(w) == U("r"));
                CHECK(r.better[i][j] + r.better[j][i] == disagree);
            }
        }
    }
}

TEST_CASE("coverage mismatch") {
    auto gold = roots({{"w1", "r1"}, {"w2", "r2"}});
    auto a = roots({{"w1", "r1"}, {"w2", "r2"}});
    auto b = roots({{"w1", "r1"}});
    auto c = roots({{"w1", "r1"}, {"w9", "r2"}});
    for (const auto& other : {b, c}) {
        std::vector<SystemPredictions> s{{"a", a}, {"b", other}};
        try {
            evaluate(s, gold);
            FAIL("expected coverage mismatch");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::coverage_mismatch);
        }
    }
}

TEST_CASE("root TSV parsing") {
    std::istringstream in("almaktab\tktb\treached_triliteral\tpre:>al\xe2\x86\x92maktab@1.000000\r\n\nkAtib\tktb\n");
    auto m = parse_root_tsv(in);
    CHECK(m.size() == 2);
    CHECK(m.at(U("almaktab")) == U("ktb"));
    CHECK(m.at(U("kAtib")) == U("ktb"));
    std::istringstream bad("lonely\n");
    CHECK_THROWS_AS(parse_root_tsv(bad), Error);
}
