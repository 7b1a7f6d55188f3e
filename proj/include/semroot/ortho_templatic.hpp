#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semroot/word.hpp"

namespace semroot {

/// Root-and-pattern template: literal segments around three single-letter
/// slots, L0 C1 L1 C2 L2 C3 L3.
struct Template {
    std::array<std::u32string, 4> literals;

    auto operator<=>(const Template&) const = default;

    /// The three slots are adjacent (L1 and L2 empty).
    bool contiguous() const { return literals[1].empty() && literals[2].empty(); }
    bool is_identity() const;
    std::size_t literal_length() const;

    /// Fills the slots with root[0..2]; root must have exactly three letters.
    std::u32string render(std::u32string_view root) const;

    /// Inverse of render: the three slot letters if `word` fits the pattern.
    std::optional<std::u32string> match(std::u32string_view word) const;

    /// `ma<C1><C2>a<C3>` form.
    std::string text() const;
    static std::optional<Template> parse(std::string_view text);
};

/// One template per in-order alignment of the root's letters inside `derived`,
/// excluding alignments where the slots are adjacent (those relations are
/// plain affixation and come from the concatenative model). Sorted, unique.
std::vector<Template> extract_templates(std::u32string_view root, std::u32string_view derived);

struct TemplaticOptions {
    std::size_t max_derived_len = 12;
};

/// Pairs every three-letter vocabulary word with each longer word (up to
/// max_derived_len) that contains it as a subsequence.
std::map<Template, SupportSet> enumerate_templatic_rules(std::span<const std::u32string> vocab,
                                                         const TemplaticOptions& options = {});

}  // namespace semroot
