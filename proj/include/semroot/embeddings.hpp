#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semroot {

struct CosineResult {
    double value = 0.0;
    /// Set when either input is the zero vector; value is then 0.
    bool degenerate = false;
};

CosineResult cosine(std::span<const double> a, std::span<const double> b);

/// cos(w4, w2 - w1 + w3): how well the offset w1->w2, moved onto w3, lands on w4.
/// All analogy scoring in the library goes through this one kernel.
double analogy_cosine(std::span<const double> w1, std::span<const double> w2,
                      std::span<const double> w3, std::span<const double> w4);

enum class VectorFormat { headered, headerless };

/// Vocabulary plus one vector per word, immutable once built.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    /// Builds a table from in-memory vectors. With normalize=false the vectors
    /// are stored as given, which breaks the unit-norm invariant and is meant
    /// for tests of raw offset arithmetic. Duplicate words keep the first entry.
    static EmbeddingTable from_vectors(const std::vector<std::u32string>& words,
                                       const std::vector<std::vector<double>>& vectors,
                                       bool normalize = true,
                                       std::size_t* duplicates = nullptr);

    std::size_t size() const noexcept { return words_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return words_.empty(); }

    const std::vector<std::u32string>& words() const noexcept { return words_; }
    const std::u32string& word(std::size_t id) const { return words_.at(id); }

    std::optional<std::size_t> find(const std::u32string& word) const;
    bool contains(const std::u32string& word) const { return find(word).has_value(); }

    std::span<const double> vector(std::size_t id) const {
        return {data_.data() + id * dim_, dim_};
    }

    /// Throws Error(unknown_word) when absent.
    std::span<const double> lookup(const std::u32string& word) const;

private:
    std::vector<std::u32string> words_;
    std::vector<double> data_;
    std::size_t dim_ = 0;
    std::unordered_map<std::u32string, std::size_t> index_;
};

struct LoadResult {
    EmbeddingTable table;
    std::size_t duplicates = 0;
};

/// Reads `word c1 ... cd` lines (UTF-8). Vectors are L2-normalized on load.
/// top_n keeps only the first n distinct words.
LoadResult parse_embeddings(std::istream& in, VectorFormat format,
                            std::optional<std::size_t> top_n = std::nullopt);

LoadResult load_embeddings(const std::filesystem::path& path, VectorFormat format,
                           std::optional<std::size_t> top_n = std::nullopt);

/// Writes the text format read by parse_embeddings, using shortest
/// round-trip decimal forms.
void write_embeddings(std::ostream& out, const EmbeddingTable& table, bool header);

/// Throws Error(unknown_word) if any word is missing.
double analogy_score(const EmbeddingTable& table, const std::u32string& w1,
                     const std::u32string& w2, const std::u32string& w3,
                     const std::u32string& w4);

}  // namespace semroot
