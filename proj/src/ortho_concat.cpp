#include "semroot/ortho_concat.hpp"

#include <algorithm>
#include <unordered_map>

namespace semroot {

bool is_canonical(const ConcatRule& rule, std::size_t max_affix) {
    if (rule.from == rule.to) return false;
    if (rule.from.size() > max_affix || rule.to.size() > max_affix) return false;
    if (rule.from.empty() || rule.to.empty()) return true;
    if (rule.side == Side::prefix) return rule.from.back() != rule.to.back();
    return rule.from.front() != rule.to.front();
}

std::string concat_key(const ConcatRule& rule) {
    return std::string(rule.side == Side::prefix ? "pre:" : "suf:") + utf8_encode(rule.from) + ">" +
           utf8_encode(rule.to);
}

namespace {

struct Member {
    WordId word;
    std::size_t affix_len;
};

void pair_group(std::span<const std::u32string> vocab, Side side, const std::vector<Member>& group,
                std::map<ConcatRule, SupportSet>& rules) {
    for (const auto& a : group) {
        const auto& wa = vocab[a.word];
        for (const auto& b : group) {
            if (a.word == b.word) continue;
            const auto& wb = vocab[b.word];
            ConcatRule rule;
            rule.side = side;
            if (side == Side::prefix) {
                rule.from = wa.substr(0, a.affix_len);
                rule.to = wb.substr(0, b.affix_len);
            } else {
                rule.from = wa.substr(wa.size() - a.affix_len);
                rule.to = wb.substr(wb.size() - b.affix_len);
            }
            // Only the maximal shared stem yields a canonical rule, so each
            // ordered pair lands in exactly one rule per side.
            if (!is_canonical(rule, static_cast<std::size_t>(-1))) continue;
            rules[std::move(rule)].push_back({a.word, b.word});
        }
    }
}

void enumerate_side(std::span<const std::u32string> vocab, Side side, const ConcatOptions& options,
                    ConcatEnumeration& out) {
    std::unordered_map<std::u32string, std::vector<Member>> groups;
    const std::size_t min_stem = std::max<std::size_t>(1, options.min_stem);
    for (WordId id = 0; id < vocab.size(); ++id) {
        const auto& w = vocab[id];
        if (w.size() < min_stem) continue;
        const std::size_t max_k = std::min(options.max_affix, w.size() - min_stem);
        for (std::size_t k = 0; k <= max_k; ++k) {
            std::u32string stem = side == Side::prefix ? w.substr(k) : w.substr(0, w.size() - k);
            groups[std::move(stem)].push_back({id, k});
        }
    }
    for (const auto& [stem, members] : groups) {
        if (members.size() < 2) continue;
        if (members.size() > options.group_cap) {
            ++out.skipped_groups;
            continue;
        }
        pair_group(vocab, side, members, out.rules);
    }
}

}  // namespace

ConcatEnumeration enumerate_concat_rules(std::span<const std::u32string> vocab, const ConcatOptions& options) {
    ConcatEnumeration out;
    enumerate_side(vocab, Side::prefix, options, out);
    enumerate_side(vocab, Side::suffix, options, out);
    for (auto& [rule, support] : out.rules) std::sort(support.begin(), support.end());
    return out;
}

}  // namespace semroot
