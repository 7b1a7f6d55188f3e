#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace semroot {

// Words are handled as code-point strings so that lengths and slicing count
// letters, not bytes.
std::u32string utf8_decode(std::string_view bytes);
std::string utf8_encode(std::u32string_view text);

/// Non-empty, and free of whitespace and control characters.
bool is_valid_word(std::u32string_view word);

using WordId = std::uint32_t;

/// (source, derived) pair of vocabulary indices.
struct WordPair {
    WordId source = 0;
    WordId derived = 0;

    auto operator<=>(const WordPair&) const = default;
};

/// Sorted, duplicate-free list of word pairs grouped under one rule.
using SupportSet = std::vector<WordPair>;

bool support_contains(const SupportSet& support, WordPair pair);

/// FNV-1a over the UTF-8 words, newline separated.
std::uint64_t vocabulary_hash(const std::vector<std::u32string>& words);

}  // namespace semroot
