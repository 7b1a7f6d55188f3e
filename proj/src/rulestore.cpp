#include "semroot/rulestore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "semroot/error.hpp"

namespace semroot {

RuleKind rule_kind(const RuleKey& key) {
    return std::holds_alternative<ConcatRule>(key) ? RuleKind::concatenative : RuleKind::templatic;
}

std::string key_text(const RuleKey& key) {
    if (const auto* c = std::get_if<ConcatRule>(&key)) return concat_key(*c);
    return "tpl:" + std::get<Template>(key).text();
}

void Thresholds::validate() const {
    if (!std::isfinite(t_cos_sim) || t_cos_sim <= -1.0 || t_cos_sim >= 1.0) {
        throw Error(Errc::invalid_config, "t_cos_sim must lie in (-1, 1)");
    }
    if (!std::isfinite(t_r_sem) || t_r_sem < 0.0 || t_r_sem > 1.0) {
        throw Error(Errc::invalid_config, "t_r_sem must lie in [0, 1]");
    }
    if (!std::isfinite(t_w_sem) || t_w_sem < 0.0 || t_w_sem > 1.0) {
        throw Error(Errc::invalid_config, "t_w_sem must lie in [0, 1]");
    }
    if (t_r_orth < 1) throw Error(Errc::invalid_config, "t_r_orth must be at least 1");
}

RuleStore::RuleStore(std::vector<std::u32string> vocab) : vocab_(std::move(vocab)) {
    index_.reserve(vocab_.size());
    for (WordId id = 0; id < vocab_.size(); ++id) index_.emplace(vocab_[id], id);
}

std::optional<WordId> RuleStore::find_word(const std::u32string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void RuleStore::add(RuleKey key, SupportSet support) {
    MorphRule rule{std::move(key), std::move(support), {}};
    rule.scores.orth = rule.support.size();
    rules_.push_back(std::move(rule));
}

RuleStore build_candidates(std::vector<std::u32string> vocab, const ConcatOptions& concat,
                           const TemplaticOptions& templatic, CandidateCounts* counts) {
    RuleStore store(std::move(vocab));
    auto concat_rules = enumerate_concat_rules(store.vocab(), concat);
    auto templatic_rules = enumerate_templatic_rules(store.vocab(), templatic);
    if (counts) {
        counts->concatenative = concat_rules.rules.size();
        counts->templatic = templatic_rules.size();
        counts->skipped_groups = concat_rules.skipped_groups;
    }
    store.rules().reserve(concat_rules.rules.size() + templatic_rules.size());
    for (auto& [rule, support] : concat_rules.rules) store.add(rule, std::move(support));
    for (auto& [t, support] : templatic_rules) store.add(t, std::move(support));
    return store;
}

SemanticSpace::SemanticSpace(const std::vector<std::u32string>& vocab, const EmbeddingTable& table)
    : vocab_(&vocab), table_(&table), rows_(vocab.size(), missing) {
    for (WordId id = 0; id < vocab.size(); ++id) {
        if (auto row = table.find(vocab[id])) rows_[id] = *row;
    }
}

std::span<const double> SemanticSpace::row(WordId id) const {
    return table_->vector(rows_[id]);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Partial Fisher-Yates over [0, n) driven directly by mt19937_64 output so the
// selection does not depend on the standard library's distributions.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

std::vector<WordPair> scoring_pairs(const MorphRule& rule, const SemanticSpace& space,
                                    const SamplingParams& sampling, bool* sampled) {
    std::vector<WordPair> embedded;
    embedded.reserve(rule.support.size());
    for (const auto& p : rule.support) {
        if (space.has(p.source) && space.has(p.derived)) embedded.push_back(p);
    }
    if (sampled) *sampled = false;
    if (sampling.sample_cap == 0 || embedded.size() <= sampling.sample_cap) return embedded;

    if (sampled) *sampled = true;
    std::sort(embedded.begin(), embedded.end(), [&space](const WordPair& a, const WordPair& b) {
        const auto& sa = space.word(a.source);
        const auto& sb = space.word(b.source);
        if (sa != sb) return sa < sb;
        return space.word(a.derived) < space.word(b.derived);
    });
    auto idx = sample_indices(embedded.size(), sampling.sample_cap, sampling.seed ^ fnv1a(rule.text()));
    std::vector<WordPair> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(embedded[i]);
    return out;
}

SemScore score_r_sem(const MorphRule& rule, const SemanticSpace& space, double t_cos,
                     const SamplingParams& sampling) {
    SemScore score;
    auto pairs = scoring_pairs(rule, space, sampling, &score.sampled);
    if (pairs.empty()) {
        score.empty = true;
        return score;
    }
    std::size_t pass = 0;
    for (const auto& a : pairs) {
        auto w1 = space.row(a.source);
        auto w2 = space.row(a.derived);
        for (const auto& b : pairs) {
            if (analogy_cosine(w1, w2, space.row(b.source), space.row(b.derived)) > t_cos) ++pass;
        }
    }
    const double n = static_cast<double>(pairs.size());
    score.value = static_cast<double>(pass) / (n * n);
    return score;
}

SemScore score_w_sem(WordPair pair, const MorphRule& rule, const SemanticSpace& space, double t_cos,
                     const SamplingParams& sampling) {
    if (!support_contains(rule.support, pair)) {
        throw Error(Errc::pair_not_in_support, "pair is not in the support of " + rule.text());
    }
    SemScore score;
    auto pairs = scoring_pairs(rule, space, sampling, &score.sampled);
    if (pairs.empty() || !space.has(pair.source) || !space.has(pair.derived)) {
        score.empty = true;
        return score;
    }
    auto w1 = space.row(pair.source);
    auto w2 = space.row(pair.derived);
    std::size_t pass = 0;
    for (const auto& other : pairs) {
        if (analogy_cosine(space.row(other.source), space.row(other.derived), w1, w2) > t_cos) ++pass;
    }
    score.value = static_cast<double>(pass) / static_cast<double>(pairs.size());
    return score;
}

void score_rules(RuleStore& store, const EmbeddingTable& table, double t_cos, const SamplingParams& sampling) {
    SemanticSpace space(store.vocab(), table);
    for (auto& rule : store.rules()) {
        auto s = score_r_sem(rule, space, t_cos, sampling);
        rule.scores.sem = s.value;
        rule.scores.sampled = s.sampled;
        rule.scores.empty = s.empty;
    }
}

bool rule_order(const MorphRule& a, const MorphRule& b) {
    if (a.scores.sem != b.scores.sem) return a.scores.sem > b.scores.sem;
    if (a.scores.orth != b.scores.orth) return a.scores.orth > b.scores.orth;
    return a.text() < b.text();
}

RuleStore prune_rules(const RuleStore& store, const Thresholds& thresholds) {
    RuleStore out(store.vocab());
    for (const auto& rule : store.rules()) {
        if (rule.scores.sem > thresholds.t_r_sem && rule.scores.orth > thresholds.t_r_orth) {
            out.rules().push_back(rule);
        }
    }
    std::sort(out.rules().begin(), out.rules().end(), rule_order);
    return out;
}

std::vector<MorphRule> rank_rules(const RuleStore& store, KindFilter filter, std::size_t top_k) {
    std::vector<MorphRule> out;
    for (const auto& rule : store.rules()) {
        if (filter == KindFilter::templatic && rule.kind() != RuleKind::templatic) continue;
        if (filter == KindFilter::concatenative && rule.kind() != RuleKind::concatenative) continue;
        out.push_back(rule);
    }
    std::sort(out.begin(), out.end(), rule_order);
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

}  // namespace semroot
