#include <doctest.h>

#include <random>

#include "semroot/jzr.hpp"
#include "semroot/synthlang.hpp"
#include "test_support.hpp"

using namespace semroot;
using semroot::testing::U;

namespace {

SynthConfig ktb_config() {
    SynthConfig c = SynthConfig::defaults();
    c.n_roots = 30;
    c.templates = {*Template::parse("ma<C1><C2>a<C3>")};
    c.affixes = {ConcatRule{Side::prefix, U(""), U("al")}};
    c.fixed_roots = {U("ktb")};
    c.chain_depth = 2;
    return c;
}

struct Learned {
    SynthFixture fx;
    RuleStore store;
};

const Learned& ktb_learned() {
    static const Learned l = [] {
        auto fx = generate(ktb_config());
        auto store = testing::learn_rules(fx.vocab, fx.table);
        return Learned{std::move(fx), std::move(store)};
    }();
    return l;
}

}  // namespace

TEST_CASE("inverse application examples") {
    const RuleKey al = ConcatRule{Side::prefix, U(""), U("al")};
    const RuleKey tpl = *Template::parse("ma<C1><C2>a<C3>");
    CHECK(inverse_apply(al, U("almaktab")) == U("maktab"));
    CHECK(inverse_apply(tpl, U("maktab")) == U("ktb"));
    CHECK_FALSE(inverse_apply(al, U("maktab")));
    CHECK_FALSE(inverse_apply(tpl, U("almaktab")));
    CHECK(inverse_apply(al, U("al")) == U(""));

    const RuleKey rep = ConcatRule{Side::suffix, U("a"), U("un")};
    CHECK(inverse_apply(rep, U("katbun")) == U("katba"));
    CHECK(forward_apply(rep, U("katba")) == U("katbun"));
    CHECK_FALSE(forward_apply(rep, U("katb")));
    CHECK(forward_apply(tpl, U("ktb")) == U("maktab"));
    CHECK_FALSE(forward_apply(tpl, U("ktbx")));
}

TEST_CASE("forward then inverse is the identity on concatenative rules") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        auto side = rng() % 2 ? Side::prefix : Side::suffix;
        auto from = testing::random_string(rng, U("abc"), 0, 2);
        auto to = testing::random_string(rng, U("abc"), 1, 3);
        ConcatRule r{side, from, to};
        auto w = testing::random_string(rng, U("abc"), 1, 6);
        if (auto d = forward_apply(r, w)) CHECK(inverse_apply(r, *d) == w);
    }
}

TEST_CASE("partition follows affix shape and mode") {
    RuleStore store;
    store.rules().push_back({ConcatRule{Side::prefix, U(""), U("al")}, {}, {}});
    store.rules().push_back({ConcatRule{Side::prefix, U("al"), U("")}, {}, {}});
    store.rules().push_back({ConcatRule{Side::suffix, U("at"), U("un")}, {}, {}});
    store.rules().push_back({*Template::parse("ma<C1><C2>a<C3>"), {}, {}});
    auto full = partition_rules(store, ExtractMode::full);
    CHECK(full.add == std::vector<std::size_t>{0, 3});
    CHECK(full.rep == std::vector<std::size_t>{2});
    auto limited = partition_rules(store, ExtractMode::limited);
    CHECK(limited.add == std::vector<std::size_t>{0});
    CHECK(limited.rep == std::vector<std::size_t>{2});
}

TEST_CASE("planted chain reaches the root in full mode only") {
    const auto& l = ktb_learned();
    Thresholds th;
    auto full = extract_root(U("almaktab"), l.store, l.fx.table, th);
    CHECK(full.final_word == U("ktb"));
    CHECK(full.status == TraceStatus::reached_triliteral);
    REQUIRE(full.steps.size() == 2);
    CHECK(full.steps[0].rule_key == "pre:>al");
    CHECK(full.steps[0].word == U("maktab"));
    CHECK(full.steps[1].rule_key == "tpl:ma<C1><C2>a<C3>");

    auto limited = extract_root_limited(U("almaktab"), l.store, l.fx.table, th);
    CHECK(limited.final_word == U("maktab"));
    CHECK(limited.status == TraceStatus::infeasible_stop);
    CHECK(limited.steps.size() == 1);

    CHECK(format_trace(full).rfind("almaktab\tktb\treached_triliteral\tpre:>al\xe2\x86\x92maktab@", 0) == 0);
}

TEST_CASE("short and unknown words") {
    const auto& l = ktb_learned();
    auto t = extract_root(U("ktb"), l.store, l.fx.table, {});
    CHECK(t.steps.empty());
    CHECK(t.final_word == U("ktb"));
    CHECK(t.status == TraceStatus::reached_triliteral);
    CHECK(format_trace(t) == "ktb\tktb\treached_triliteral\t");

    auto u = extract_root(U("qqqqqqq"), l.store, l.fx.table, {});
    CHECK(u.steps.empty());
    CHECK(u.status == TraceStatus::infeasible_stop);
    CHECK(extract_root(U(""), l.store, l.fx.table, {}).status == TraceStatus::reached_triliteral);
}

TEST_CASE("every step honours the extraction constraints") {
    const auto& l = ktb_learned();
    Thresholds th;
    RootExtractor ex(l.store, l.fx.table, th, {}, ExtractMode::full);
    SemanticSpace space(l.store.vocab(), l.fx.table);
    std::map<std::string, const MorphRule*> by_key;
    for (const auto& r : l.store.rules()) by_key[r.text()] = &r;

    for (const auto& w : l.fx.vocab) {
        auto t = ex.extract(w);
        CHECK(t.start == w);
        std::u32string cur = w;
        for (const auto& s : t.steps) {
            REQUIRE(by_key.count(s.rule_key));
            const auto& rule = *by_key[s.rule_key];
            CHECK(inverse_apply(rule.key, cur) == s.word);
            CHECK(s.word.size() < cur.size());
            CHECK(cur.size() > 3);
            WordPair p{*l.store.find_word(s.word), *l.store.find_word(cur)};
            CHECK(support_contains(rule.support, p));
            CHECK(s.score > th.t_w_sem);
            CHECK(s.score == score_w_sem(p, rule, space, th.t_cos_sim, {}).value);
            cur = s.word;
        }
        CHECK(t.final_word == cur);
        CHECK((t.status == TraceStatus::reached_triliteral) == (cur.size() <= 3));
        CHECK(ex.extract(w).steps.size() == t.steps.size());
        CHECK(format_trace(ex.extract(w)) == format_trace(t));
    }
}

TEST_CASE("limited mode equals full mode without templates") {
    auto c = ktb_config();
    c.templates.clear();
    c.affixes.push_back(ConcatRule{Side::suffix, U(""), U("at")});
    auto fx = generate(c);
    auto store = testing::learn_rules(fx.vocab, fx.table);
    RootExtractor full(store, fx.table, {}, {}, ExtractMode::full);
    RootExtractor limited(store, fx.table, {}, {}, ExtractMode::limited);
    for (const auto& w : fx.vocab) CHECK(format_trace(full.extract(w)) == format_trace(limited.extract(w)));
}

TEST_CASE("arbitrary inputs terminate within the length bound") {
    const auto& l = ktb_learned();
    RootExtractor ex(l.store, l.fx.table, {}, {}, ExtractMode::full);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        std::u32string w = i % 2 ? l.fx.vocab[rng() % l.fx.vocab.size()]
                                 : testing::random_string(rng, U("almktbqz"), 3, 20);
        auto t = ex.extract(w);
        CHECK(t.steps.size() <= w.size());
        std::size_t prev = w.size();
        for (const auto& s : t.steps) {
            CHECK(s.word.size() < prev);
            prev = s.word.size();
        }
    }
}
