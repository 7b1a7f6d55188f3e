#include "semroot/synthlang.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <unordered_map>

#include "semroot/error.hpp"
#include "semroot/jzr.hpp"

namespace semroot {

namespace {

Template tpl(std::string_view text) { return *Template::parse(text); }

// Draws from mt19937_64 output directly so fixtures do not depend on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (spare_) {
            spare_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        cached_ = r * std::sin(theta);
        spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    bool spare_ = false;
    double cached_ = 0.0;
};

std::vector<double> unit_gaussian(Rng& rng, std::size_t dim, double scale) {
    std::vector<double> v(dim);
    double norm = 0.0;
    for (auto& x : v) {
        x = rng.gaussian();
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x *= scale / norm;
    return v;
}

}  // namespace

SynthConfig SynthConfig::defaults() {
    SynthConfig c;
    c.templates = {tpl("ma<C1><C2>a<C3>"), tpl("<C1>A<C2>i<C3>"), tpl("<C1>u<C2><C3>U"),
                   tpl("ta<C1>A<C2>u<C3>"), tpl("<C1>i<C2>A<C3>a")};
    c.affixes = {{Side::prefix, U"", U"al"},
                 {Side::prefix, U"", U"wa"},
                 {Side::suffix, U"", U"at"},
                 {Side::suffix, U"", U"un"},
                 {Side::suffix, U"", U"iy"}};
    c.alphabet = U"bcdfgjkpqrsvxzBCDFGJKPQRSVXZ";
    return c;
}

void SynthConfig::validate() const {
    if (n_roots < 1) throw Error(Errc::invalid_config, "n_roots must be at least 1");
    if (dim < 2) throw Error(Errc::invalid_config, "dim must be at least 2");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw Error(Errc::invalid_config, "noise_sigma must be a finite non-negative number");
    }
    if (!(offset_scale > 0.0) || !std::isfinite(offset_scale)) {
        throw Error(Errc::invalid_config, "offset_scale must be positive");
    }
    if (chain_depth != 1 && chain_depth != 2) throw Error(Errc::invalid_config, "chain_depth must be 1 or 2");
    for (const auto& t : templates) {
        if (t.is_identity()) throw Error(Errc::invalid_config, "identity template");
    }
    for (const auto& a : affixes) {
        if (!a.from.empty() || a.to.empty()) {
            throw Error(Errc::invalid_config, "planted affixes must be pure insertions");
        }
    }
    std::set<char32_t> letters(alphabet.begin(), alphabet.end());
    if (letters.size() != alphabet.size() || !is_valid_word(alphabet)) {
        throw Error(Errc::invalid_config, "alphabet must be distinct printable letters");
    }
    for (const auto& r : fixed_roots) {
        if (r.size() != 3 || !is_valid_word(r)) throw Error(Errc::invalid_config, "fixed roots need three letters");
    }
    if (fixed_roots.size() > n_roots) throw Error(Errc::invalid_config, "more fixed roots than n_roots");
    const double capacity = std::pow(static_cast<double>(letters.size()), 3);
    if (capacity < static_cast<double>(n_roots)) {
        throw Error(Errc::alphabet_too_small, std::to_string(letters.size()) + " letters cannot form " +
                                                  std::to_string(n_roots) + " distinct roots");
    }
}

SynthFixture generate(const SynthConfig& config) {
    config.validate();
    Rng rng(config.seed);
    SynthFixture fx;

    std::vector<RuleKey> rules;
    for (const auto& t : config.templates) rules.emplace_back(t);
    for (const auto& a : config.affixes) rules.emplace_back(a);
    fx.planted = rules;

    std::vector<std::u32string> roots;
    std::set<std::u32string> root_set;
    for (const auto& r : config.fixed_roots) {
        if (!root_set.insert(r).second) throw Error(Errc::invalid_config, "duplicate fixed root");
        roots.push_back(r);
    }
    while (roots.size() < config.n_roots) {
        std::u32string r;
        for (int i = 0; i < 3; ++i) r += config.alphabet[rng.below(config.alphabet.size())];
        if (root_set.insert(r).second) roots.push_back(std::move(r));
    }

    std::vector<std::vector<double>> root_vecs;
    for (std::size_t i = 0; i < roots.size(); ++i) root_vecs.push_back(unit_gaussian(rng, config.dim, 1.0));
    std::vector<std::vector<double>> offsets;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        offsets.push_back(unit_gaussian(rng, config.dim, config.offset_scale));
    }

    struct Derivation {
        std::u32string word;
        std::size_t root;
        std::vector<std::size_t> chain;
    };
    std::vector<Derivation> derivations;
    for (std::size_t r = 0; r < roots.size(); ++r) derivations.push_back({roots[r], r, {}});
    for (std::size_t r = 0; r < roots.size(); ++r) {
        for (std::size_t k = 0; k < rules.size(); ++k) {
            derivations.push_back({*forward_apply(rules[k], roots[r]), r, {k}});
        }
    }
    if (config.chain_depth >= 2) {
        const std::size_t n_templates = config.templates.size();
        for (std::size_t r = 0; r < roots.size(); ++r) {
            for (std::size_t t = 0; t < n_templates; ++t) {
                const auto stem = *forward_apply(rules[t], roots[r]);
                for (std::size_t a = n_templates; a < rules.size(); ++a) {
                    derivations.push_back({*forward_apply(rules[a], stem), r, {t, a}});
                }
            }
        }
    }

    std::unordered_map<std::u32string, std::size_t> owner;
    for (std::size_t i = 0; i < derivations.size(); ++i) {
        auto [it, fresh] = owner.emplace(derivations[i].word, i);
        if (!fresh) {
            throw Error(Errc::surface_collision, "'" + utf8_encode(derivations[i].word) +
                                                     "' is produced by two derivations");
        }
    }

    std::vector<std::vector<double>> vectors;
    vectors.reserve(derivations.size());
    for (const auto& d : derivations) {
        std::vector<double> v = root_vecs[d.root];
        for (auto k : d.chain) {
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += offsets[k][i];
        }
        for (auto& x : v) x += config.noise_sigma * rng.gaussian();
        vectors.push_back(std::move(v));
        fx.vocab.push_back(d.word);

        GoldEntry g;
        g.root = roots[d.root];
        for (auto k : d.chain) g.chain.push_back(key_text(rules[k]));
        fx.gold.emplace(d.word, std::move(g));
    }
    fx.table = EmbeddingTable::from_vectors(fx.vocab, vectors, true);
    fx.raw_vectors = std::move(vectors);
    return fx;
}

void write_fixture(const std::filesystem::path& dir, const SynthFixture& fixture) {
    std::filesystem::create_directories(dir);
    auto open = [](const std::filesystem::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(Errc::io_failure, "cannot write " + p.string());
        return out;
    };
    {
        auto out = open(dir / "vectors.txt");
        write_embeddings(out, fixture.table, true);
    }
    {
        auto out = open(dir / "gold.tsv");
        for (const auto& w : fixture.vocab) {
            const auto& g = fixture.gold.at(w);
            out << utf8_encode(w) << '\t' << utf8_encode(g.root) << '\t';
            for (std::size_t i = 0; i < g.chain.size(); ++i) out << (i ? ";" : "") << g.chain[i];
            out << '\n';
        }
    }
    {
        auto out = open(dir / "planted.txt");
        for (const auto& k : fixture.planted) out << key_text(k) << '\n';
    }
}

std::map<std::u32string, GoldEntry> read_gold(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    std::map<std::u32string, GoldEntry> gold;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto t1 = line.find('\t');
        if (t1 == std::string::npos) {
            throw Error(Errc::parse_failure, path.string() + ":" + std::to_string(line_no) + ": expected word TAB root");
        }
        auto t2 = line.find('\t', t1 + 1);
        GoldEntry g;
        g.root = utf8_decode(line.substr(t1 + 1, t2 == std::string::npos ? std::string::npos : t2 - t1 - 1));
        if (t2 != std::string::npos) {
            std::string chain = line.substr(t2 + 1);
            std::size_t pos = 0;
            while (pos < chain.size()) {
                auto semi = chain.find(';', pos);
                if (semi == std::string::npos) semi = chain.size();
                if (semi > pos) g.chain.push_back(chain.substr(pos, semi - pos));
                pos = semi + 1;
            }
        }
        gold.emplace(utf8_decode(line.substr(0, t1)), std::move(g));
    }
    return gold;
}

}  // namespace semroot
