#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "semroot/word.hpp"

namespace semroot {

enum class Side { prefix, suffix };

/// Affix replacement at one end of a word: `from` is deleted, `to` inserted.
/// Empty strings stand for the null affix.
struct ConcatRule {
    Side side = Side::prefix;
    std::u32string from;
    std::u32string to;

    auto operator<=>(const ConcatRule&) const = default;
};

/// Canonical form keeps all shared boundary material in the stem: the two
/// affixes differ and do not share the letter adjacent to the stem.
bool is_canonical(const ConcatRule& rule, std::size_t max_affix = 6);

/// Textual key such as `pre:al>wa` or `suf:>at`.
std::string concat_key(const ConcatRule& rule);

struct ConcatOptions {
    std::size_t max_affix = 6;
    std::size_t min_stem = 2;
    /// Stem groups larger than this are skipped.
    std::size_t group_cap = 10000;
};

struct ConcatEnumeration {
    std::map<ConcatRule, SupportSet> rules;
    std::size_t skipped_groups = 0;
};

/// Groups words by every stem left after stripping up to max_affix letters
/// from one end, then pairs the members of each group. Pair ids index `vocab`,
/// which is assumed duplicate-free.
ConcatEnumeration enumerate_concat_rules(std::span<const std::u32string> vocab,
                                         const ConcatOptions& options = {});

}  // namespace semroot
