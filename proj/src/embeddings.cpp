#include "semroot/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "semroot/error.hpp"
#include "semroot/word.hpp"

namespace semroot {

CosineResult cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return {0.0, true};
    double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return {std::clamp(c, -1.0, 1.0), false};
}

double analogy_cosine(std::span<const double> w1, std::span<const double> w2,
                      std::span<const double> w3, std::span<const double> w4) {
    double dot = 0.0, nq = 0.0, nt = 0.0;
    for (std::size_t i = 0; i < w4.size(); ++i) {
        const double q = w2[i] - w1[i] + w3[i];
        dot += q * w4[i];
        nq += q * q;
        nt += w4[i] * w4[i];
    }
    if (nq == 0.0 || nt == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(nq) * std::sqrt(nt)), -1.0, 1.0);
}

namespace {

void normalize_in_place(std::span<double> v, const std::u32string& word) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error(Errc::zero_vector, "zero vector for '" + utf8_encode(word) + "'");
    for (double& x : v) x /= norm;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_component(std::string_view tok, std::size_t line_no) {
    double value = 0.0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
        throw Error(Errc::parse_failure, "line " + std::to_string(line_no) + ": bad component '" +
                                             std::string(tok) + "'");
    }
    return value;
}

}  // namespace

EmbeddingTable EmbeddingTable::from_vectors(const std::vector<std::u32string>& words,
                                            const std::vector<std::vector<double>>& vectors,
                                            bool normalize, std::size_t* duplicates) {
    if (words.size() != vectors.size()) {
        throw Error(Errc::dimension_mismatch, "word and vector counts differ");
    }
    EmbeddingTable t;
    std::size_t dups = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (!is_valid_word(words[i])) {
            throw Error(Errc::parse_failure, "invalid word '" + utf8_encode(words[i]) + "'");
        }
        if (i == 0) t.dim_ = vectors[i].size();
        if (vectors[i].size() != t.dim_ || t.dim_ == 0) {
            throw Error(Errc::dimension_mismatch, "vector " + std::to_string(i) + " has " +
                                                      std::to_string(vectors[i].size()) +
                                                      " components, expected " + std::to_string(t.dim_));
        }
        for (double x : vectors[i]) {
            if (!std::isfinite(x)) throw Error(Errc::parse_failure, "non-finite component");
        }
        if (t.index_.count(words[i])) {
            ++dups;
            continue;
        }
        std::size_t start = t.data_.size();
        t.data_.insert(t.data_.end(), vectors[i].begin(), vectors[i].end());
        if (normalize) normalize_in_place(std::span<double>(t.data_).subspan(start, t.dim_), words[i]);
        t.index_.emplace(words[i], t.words_.size());
        t.words_.push_back(words[i]);
    }
    if (duplicates) *duplicates = dups;
    return t;
}

std::optional<std::size_t> EmbeddingTable::find(const std::u32string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const double> EmbeddingTable::lookup(const std::u32string& word) const {
    auto id = find(word);
    if (!id) throw Error(Errc::unknown_word, "'" + utf8_encode(word) + "' not in vocabulary");
    return vector(*id);
}

LoadResult parse_embeddings(std::istream& in, VectorFormat format, std::optional<std::size_t> top_n) {
    std::vector<std::u32string> words;
    std::vector<std::vector<double>> vectors;
    std::unordered_map<std::u32string, bool> seen;
    std::size_t duplicates = 0;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    bool any_line = false;
    std::string line;

    if (format == VectorFormat::headered) {
        while (std::getline(in, line)) {
            ++line_no;
            auto toks = split_ws(line);
            if (toks.empty()) continue;
            any_line = true;
            if (toks.size() != 2) {
                throw Error(Errc::parse_failure, "header must be 'count dim'");
            }
            double d = parse_component(toks[1], line_no);
            parse_component(toks[0], line_no);
            if (d < 1 || d != std::floor(d)) throw Error(Errc::parse_failure, "bad header dimension");
            dim = static_cast<std::size_t>(d);
            break;
        }
    }

    while (std::getline(in, line)) {
        ++line_no;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        any_line = true;
        if (top_n && words.size() >= *top_n) break;
        if (dim == 0) {
            if (toks.size() < 2) throw Error(Errc::parse_failure, "line " + std::to_string(line_no) + ": no components");
            dim = toks.size() - 1;
        }
        if (toks.size() - 1 != dim) {
            throw Error(Errc::dimension_mismatch, "line " + std::to_string(line_no) + ": " +
                                                      std::to_string(toks.size() - 1) +
                                                      " components, expected " + std::to_string(dim));
        }
        std::u32string word = utf8_decode(toks[0]);
        std::vector<double> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = parse_component(toks[i + 1], line_no);
        if (!seen.emplace(word, true).second) {
            ++duplicates;
            continue;
        }
        words.push_back(std::move(word));
        vectors.push_back(std::move(v));
    }
    if (!any_line) throw Error(Errc::empty_file, "no vector records");

    LoadResult result;
    result.table = EmbeddingTable::from_vectors(words, vectors, true);
    result.duplicates = duplicates;
    return result;
}

LoadResult load_embeddings(const std::filesystem::path& path, VectorFormat format,
                           std::optional<std::size_t> top_n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    return parse_embeddings(in, format, top_n);
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table, bool header) {
    if (header) out << table.size() << ' ' << table.dim() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << utf8_encode(table.word(i));
        for (double x : table.vector(i)) {
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
            out << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
        }
        out << '\n';
    }
}

double analogy_score(const EmbeddingTable& table, const std::u32string& w1, const std::u32string& w2,
                     const std::u32string& w3, const std::u32string& w4) {
    return analogy_cosine(table.lookup(w1), table.lookup(w2), table.lookup(w3), table.lookup(w4));
}

}  // namespace semroot
