#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "semroot/rulestore.hpp"

namespace semroot {

/// Everything recorded next to the rules so that extraction can reproduce
/// the learning run's scoring and refuse mismatched vectors.
struct RuleDbMeta {
    std::uint64_t vocab_hash = 0;
    std::size_t vocab_size = 0;
    Thresholds thresholds;
    SamplingParams sampling;
    ConcatOptions concat;
    TemplaticOptions templatic;
    CandidateCounts candidates;
};

struct RuleDb {
    RuleDbMeta meta;
    /// Validated rules; the store vocabulary is the set of words in their supports.
    RuleStore store;
};

/// JSON Lines: a header object, then one object per rule.
void write_rule_db(std::ostream& out, const RuleDbMeta& meta, const RuleStore& rules);
RuleDb read_rule_db(std::istream& in);

void save_rule_db(const std::filesystem::path& path, const RuleDbMeta& meta, const RuleStore& rules);
RuleDb load_rule_db(const std::filesystem::path& path);

/// `key TAB orth TAB sem` per rule.
void write_rule_summary(std::ostream& out, const std::vector<MorphRule>& rules);

std::string hash_hex(std::uint64_t h);

}  // namespace semroot
