#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semroot/embeddings.hpp"
#include "semroot/rulestore.hpp"

namespace semroot {

/// Undoes a rule on `word`: strips the inserted affix and restores the deleted
/// one, or reads the three slot letters off a template.
std::optional<std::u32string> inverse_apply(const RuleKey& rule, std::u32string_view word);

/// Applies a rule in its forward direction (template rendering needs a
/// three-letter input).
std::optional<std::u32string> forward_apply(const RuleKey& rule, std::u32string_view word);

enum class ExtractMode { full, limited };

/// Indices into a validated store. R_add holds pure insertions (empty `from`)
/// and, in full mode, every template; R_rep holds concatenative rules with both
/// affixes non-empty. Pure deletions belong to neither.
struct RulePartition {
    std::vector<std::size_t> add;
    std::vector<std::size_t> rep;
};

RulePartition partition_rules(const RuleStore& validated, ExtractMode mode);

enum class TraceStatus { reached_triliteral, infeasible_stop };

const char* status_name(TraceStatus status);

struct TraceStep {
    std::string rule_key;
    std::u32string word;
    double score = 0.0;
};

struct ExtractionTrace {
    std::u32string start;
    std::vector<TraceStep> steps;
    std::u32string final_word;
    TraceStatus status = TraceStatus::infeasible_stop;
};

/// Iterative root extraction over a frozen, pruned rule store. Each step picks
/// the rule whose inverse yields a shorter attested word w' with (w', w) in
/// its support and the best pair score above t_w_sem, trying R_add before
/// R_rep, until the word has at most three letters or no rule applies.
class RootExtractor {
public:
    RootExtractor(const RuleStore& validated, const EmbeddingTable& table, Thresholds thresholds,
                  SamplingParams sampling, ExtractMode mode);

    ExtractionTrace extract(std::u32string_view word) const;

    ExtractMode mode() const noexcept { return mode_; }

private:
    struct Candidate {
        std::size_t rule;
        WordId source;
    };

    std::optional<TraceStep> best_step(WordId derived, const std::vector<bool>& allowed) const;

    const RuleStore* store_;
    SemanticSpace space_;
    Thresholds thresholds_;
    SamplingParams sampling_;
    ExtractMode mode_;
    std::vector<bool> in_add_;
    std::vector<bool> in_rep_;
    std::unordered_map<WordId, std::vector<Candidate>> by_derived_;
};

ExtractionTrace extract_root(std::u32string_view word, const RuleStore& validated, const EmbeddingTable& table,
                             const Thresholds& thresholds, const SamplingParams& sampling = {});

ExtractionTrace extract_root_limited(std::u32string_view word, const RuleStore& validated,
                                     const EmbeddingTable& table, const Thresholds& thresholds,
                                     const SamplingParams& sampling = {});

/// `word TAB final TAB status TAB key→w'@score;...`
std::string format_trace(const ExtractionTrace& trace);

}  // namespace semroot
