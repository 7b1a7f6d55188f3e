#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "semroot/embeddings.hpp"
#include "semroot/rulestore.hpp"

namespace semroot {

/// Synthetic language with planted roots, templates and affixes. Word vectors
/// follow the offset construction normalize(v_root + sum of rule offsets + noise).
struct SynthConfig {
    std::size_t n_roots = 200;
    std::vector<Template> templates;
    /// Pure insertions (empty `from`).
    std::vector<ConcatRule> affixes;
    std::size_t dim = 64;
    double noise_sigma = 0.01;
    /// Norm of each rule's offset vector; root vectors have unit norm.
    double offset_scale = 2.0;
    std::u32string alphabet;
    /// Roots used verbatim before random ones are drawn; each must have three letters.
    std::vector<std::u32string> fixed_roots;
    std::uint64_t seed = 42;
    /// 1: root -> word. 2: additionally root -> template -> affix.
    int chain_depth = 1;

    /// 200 roots over a 28-consonant alphabet, five templates, prefixes
    /// al/wa and suffixes at/un/iy.
    static SynthConfig defaults();

    /// Throws Error(invalid_config) or Error(alphabet_too_small).
    void validate() const;
};

struct GoldEntry {
    std::u32string root;
    /// Rule keys from root to word; empty for roots.
    std::vector<std::string> chain;
};

struct SynthFixture {
    std::vector<std::u32string> vocab;
    EmbeddingTable table;
    /// Vectors before normalization, parallel to vocab.
    std::vector<std::vector<double>> raw_vectors;
    std::map<std::u32string, GoldEntry> gold;
    std::vector<RuleKey> planted;
};

/// Throws Error(surface_collision) when two derivations produce the same word.
SynthFixture generate(const SynthConfig& config);

/// Writes vectors.txt (headered), gold.tsv and planted.txt under `dir`.
void write_fixture(const std::filesystem::path& dir, const SynthFixture& fixture);

/// gold.tsv reader: word TAB root TAB chain (';'-separated keys).
std::map<std::u32string, GoldEntry> read_gold(const std::filesystem::path& path);

}  // namespace semroot
