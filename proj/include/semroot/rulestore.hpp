#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "semroot/embeddings.hpp"
#include "semroot/ortho_concat.hpp"
#include "semroot/ortho_templatic.hpp"
#include "semroot/word.hpp"

namespace semroot {

enum class RuleKind { concatenative, templatic };

using RuleKey = std::variant<ConcatRule, Template>;

RuleKind rule_kind(const RuleKey& key);
std::string key_text(const RuleKey& key);

struct RuleScores {
    std::size_t orth = 0;
    double sem = 0.0;
    bool sampled = false;
    /// No support pair had embeddings for both words.
    bool empty = false;
};

struct MorphRule {
    RuleKey key;
    SupportSet support;
    RuleScores scores;

    RuleKind kind() const { return rule_kind(key); }
    std::string text() const { return key_text(key); }
};

struct Thresholds {
    double t_cos_sim = 0.5;
    double t_r_sem = 0.1;
    std::size_t t_r_orth = 20;
    double t_w_sem = 0.1;

    /// Throws Error(invalid_config).
    void validate() const;
};

struct SamplingParams {
    std::size_t sample_cap = 100;
    std::uint64_t seed = 42;
};

/// Candidate or validated rules over a fixed vocabulary. Support pairs index
/// into vocab().
class RuleStore {
public:
    RuleStore() = default;
    explicit RuleStore(std::vector<std::u32string> vocab);

    const std::vector<std::u32string>& vocab() const noexcept { return vocab_; }
    std::optional<WordId> find_word(const std::u32string& word) const;

    const std::vector<MorphRule>& rules() const noexcept { return rules_; }
    std::vector<MorphRule>& rules() noexcept { return rules_; }

    void add(RuleKey key, SupportSet support);

private:
    std::vector<std::u32string> vocab_;
    std::unordered_map<std::u32string, WordId> index_;
    std::vector<MorphRule> rules_;
};

struct CandidateCounts {
    std::size_t concatenative = 0;
    std::size_t templatic = 0;
    std::size_t skipped_groups = 0;
};

/// Runs both orthographic models over `vocab` and collects every candidate
/// rule, concatenative first, each kind in key order. orth is filled in.
RuleStore build_candidates(std::vector<std::u32string> vocab, const ConcatOptions& concat,
                           const TemplaticOptions& templatic, CandidateCounts* counts = nullptr);

/// Maps a store's word ids onto embedding rows; words without vectors map to nothing.
class SemanticSpace {
public:
    SemanticSpace(const std::vector<std::u32string>& vocab, const EmbeddingTable& table);

    std::span<const double> row(WordId id) const;
    bool has(WordId id) const { return rows_[id] != missing; }
    const EmbeddingTable& table() const noexcept { return *table_; }
    const std::u32string& word(WordId id) const { return (*vocab_)[id]; }

private:
    static constexpr std::size_t missing = static_cast<std::size_t>(-1);
    const std::vector<std::u32string>* vocab_;
    const EmbeddingTable* table_;
    std::vector<std::size_t> rows_;
};

struct SemScore {
    double value = 0.0;
    bool sampled = false;
    bool empty = false;
};

/// The embedded support pairs a rule's semantic scores range over: every
/// embedded pair, or a seeded sample of sample_cap of them. The sample is
/// drawn over the pairs in word-string order, so it does not depend on how a
/// store numbers its words.
std::vector<WordPair> scoring_pairs(const MorphRule& rule, const SemanticSpace& space,
                                    const SamplingParams& sampling, bool* sampled = nullptr);

/// Fraction of ordered (pair, pair) combinations, diagonal included, whose
/// analogy cos(w4, w2 - w1 + w3) exceeds t_cos.
SemScore score_r_sem(const MorphRule& rule, const SemanticSpace& space, double t_cos,
                     const SamplingParams& sampling);

/// Fraction of co-members (w3, w4) for which cos(w2, w4 - w3 + w1) exceeds
/// t_cos, where (w1, w2) is the queried pair. Throws Error(pair_not_in_support).
SemScore score_w_sem(WordPair pair, const MorphRule& rule, const SemanticSpace& space, double t_cos,
                     const SamplingParams& sampling);

/// Fills scores.sem / sampled / empty for every rule (orth is left as is).
void score_rules(RuleStore& store, const EmbeddingTable& table, double t_cos,
                 const SamplingParams& sampling);

/// Descending sem, then descending orth, then ascending key text.
bool rule_order(const MorphRule& a, const MorphRule& b);

/// Keeps rules with sem > t_r_sem and orth > t_r_orth, sorted by rule_order.
RuleStore prune_rules(const RuleStore& store, const Thresholds& thresholds);

enum class KindFilter { templatic, concatenative, all };

std::vector<MorphRule> rank_rules(const RuleStore& store, KindFilter filter, std::size_t top_k);

}  // namespace semroot
