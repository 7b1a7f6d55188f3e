#include "semroot/ortho_templatic.hpp"

#include <algorithm>
#include <unordered_map>

namespace semroot {

bool Template::is_identity() const {
    return std::all_of(literals.begin(), literals.end(), [](const auto& l) { return l.empty(); });
}

std::size_t Template::literal_length() const {
    std::size_t n = 0;
    for (const auto& l : literals) n += l.size();
    return n;
}

std::u32string Template::render(std::u32string_view root) const {
    std::u32string out = literals[0];
    out += root[0];
    out += literals[1];
    out += root[1];
    out += literals[2];
    out += root[2];
    out += literals[3];
    return out;
}

std::optional<std::u32string> Template::match(std::u32string_view word) const {
    if (word.size() != literal_length() + 3) return std::nullopt;
    std::u32string root;
    std::size_t pos = 0;
    for (std::size_t seg = 0; seg < 4; ++seg) {
        const auto& lit = literals[seg];
        if (word.substr(pos, lit.size()) != lit) return std::nullopt;
        pos += lit.size();
        if (seg < 3) root += word[pos++];
    }
    return root;
}

std::string Template::text() const {
    std::string out = utf8_encode(literals[0]);
    out += "<C1>";
    out += utf8_encode(literals[1]);
    out += "<C2>";
    out += utf8_encode(literals[2]);
    out += "<C3>";
    out += utf8_encode(literals[3]);
    return out;
}

std::optional<Template> Template::parse(std::string_view text) {
    static constexpr std::string_view slots[] = {"<C1>", "<C2>", "<C3>"};
    Template t;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        auto at = text.find(slots[i], pos);
        if (at == std::string_view::npos) return std::nullopt;
        t.literals[i] = utf8_decode(text.substr(pos, at - pos));
        pos = at + slots[i].size();
    }
    t.literals[3] = utf8_decode(text.substr(pos));
    return t;
}

std::vector<Template> extract_templates(std::u32string_view root, std::u32string_view derived) {
    std::vector<Template> out;
    if (root.size() != 3 || derived.size() <= 3) return out;
    const std::size_t n = derived.size();
    for (std::size_t i = 0; i + 2 < n; ++i) {
        if (derived[i] != root[0]) continue;
        for (std::size_t j = i + 1; j + 1 < n; ++j) {
            if (derived[j] != root[1]) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (derived[k] != root[2]) continue;
                if (j == i + 1 && k == j + 1) continue;
                Template t;
                t.literals[0] = derived.substr(0, i);
                t.literals[1] = derived.substr(i + 1, j - i - 1);
                t.literals[2] = derived.substr(j + 1, k - j - 1);
                t.literals[3] = derived.substr(k + 1);
                out.push_back(std::move(t));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<Template, SupportSet> enumerate_templatic_rules(std::span<const std::u32string> vocab,
                                                         const TemplaticOptions& options) {
    // letter -> words holding it at a position that leaves room for two more slots
    std::unordered_map<char32_t, std::vector<WordId>> first_letter;
    for (WordId id = 0; id < vocab.size(); ++id) {
        const auto& w = vocab[id];
        if (w.size() <= 3 || w.size() > options.max_derived_len) continue;
        std::u32string seen;
        for (std::size_t p = 0; p + 3 <= w.size(); ++p) {
            if (seen.find(w[p]) != std::u32string::npos) continue;
            seen += w[p];
            first_letter[w[p]].push_back(id);
        }
    }

    std::map<Template, SupportSet> rules;
    for (WordId root = 0; root < vocab.size(); ++root) {
        const auto& r = vocab[root];
        if (r.size() != 3) continue;
        auto it = first_letter.find(r[0]);
        if (it == first_letter.end()) continue;
        for (WordId derived : it->second) {
            for (auto& t : extract_templates(r, vocab[derived])) {
                rules[std::move(t)].push_back({root, derived});
            }
        }
    }
    for (auto& [t, support] : rules) std::sort(support.begin(), support.end());
    return rules;
}

}  // namespace semroot
