#include "semroot/rule_db.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

#include "semroot/error.hpp"

namespace semroot {

using ojson = nlohmann::ordered_json;

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

constexpr const char* kFormat = "semroot-rules";
constexpr int kVersion = 1;

std::uint64_t parse_hex(const std::string& s) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used, 16);
        if (used != s.size()) throw Error(Errc::format_error, "bad hash '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw Error(Errc::format_error, "bad hash '" + s + "'");
    }
}

ojson header_json(const RuleDbMeta& meta, const RuleStore& rules) {
    std::size_t vc = 0, vt = 0;
    for (const auto& r : rules.rules()) (r.kind() == RuleKind::concatenative ? vc : vt)++;
    ojson h;
    h["format"] = kFormat;
    h["version"] = kVersion;
    h["vocab_hash"] = hash_hex(meta.vocab_hash);
    h["vocab_size"] = meta.vocab_size;
    h["thresholds"] = {{"t_cos_sim", meta.thresholds.t_cos_sim},
                       {"t_r_sem", meta.thresholds.t_r_sem},
                       {"t_r_orth", meta.thresholds.t_r_orth},
                       {"t_w_sem", meta.thresholds.t_w_sem}};
    h["sampling"] = {{"sample_cap", meta.sampling.sample_cap}, {"seed", meta.sampling.seed}};
    h["options"] = {{"max_affix", meta.concat.max_affix},
                    {"min_stem", meta.concat.min_stem},
                    {"group_cap", meta.concat.group_cap},
                    {"max_derived_len", meta.templatic.max_derived_len}};
    h["candidates"] = {{"concatenative", meta.candidates.concatenative},
                       {"templatic", meta.candidates.templatic},
                       {"skipped_groups", meta.candidates.skipped_groups}};
    h["validated"] = {{"concatenative", vc}, {"templatic", vt}};
    return h;
}

ojson rule_json(const MorphRule& rule, const std::vector<std::u32string>& vocab) {
    ojson r;
    if (const auto* c = std::get_if<ConcatRule>(&rule.key)) {
        r["kind"] = "concatenative";
        r["key"] = rule.text();
        r["side"] = c->side == Side::prefix ? "prefix" : "suffix";
        r["from"] = utf8_encode(c->from);
        r["to"] = utf8_encode(c->to);
    } else {
        r["kind"] = "templatic";
        r["key"] = rule.text();
        r["template"] = std::get<Template>(rule.key).text();
    }
    r["orth"] = rule.scores.orth;
    r["sem"] = rule.scores.sem;
    r["sampled"] = rule.scores.sampled;
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(rule.support.size());
    for (const auto& p : rule.support) pairs.emplace_back(utf8_encode(vocab[p.source]), utf8_encode(vocab[p.derived]));
    std::sort(pairs.begin(), pairs.end());
    ojson support = ojson::array();
    for (auto& [a, b] : pairs) support.push_back({std::move(a), std::move(b)});
    r["support"] = std::move(support);
    return r;
}

struct RawRule {
    RuleKey key;
    std::vector<std::pair<std::u32string, std::u32string>> pairs;
    RuleScores scores;
};

RawRule parse_rule(const ojson& r) {
    RawRule raw;
    const auto kind = r.at("kind").get<std::string>();
    if (kind == "concatenative") {
        ConcatRule c;
        const auto side = r.at("side").get<std::string>();
        if (side != "prefix" && side != "suffix") throw Error(Errc::format_error, "bad side '" + side + "'");
        c.side = side == "prefix" ? Side::prefix : Side::suffix;
        c.from = utf8_decode(r.at("from").get<std::string>());
        c.to = utf8_decode(r.at("to").get<std::string>());
        raw.key = std::move(c);
    } else if (kind == "templatic") {
        auto t = Template::parse(r.at("template").get<std::string>());
        if (!t) throw Error(Errc::format_error, "bad template");
        raw.key = std::move(*t);
    } else {
        throw Error(Errc::format_error, "unknown rule kind '" + kind + "'");
    }
    raw.scores.orth = r.at("orth").get<std::size_t>();
    raw.scores.sem = r.at("sem").get<double>();
    raw.scores.sampled = r.at("sampled").get<bool>();
    for (const auto& p : r.at("support")) {
        raw.pairs.emplace_back(utf8_decode(p.at(0).get<std::string>()), utf8_decode(p.at(1).get<std::string>()));
    }
    return raw;
}

}  // namespace

void write_rule_db(std::ostream& out, const RuleDbMeta& meta, const RuleStore& rules) {
    out << header_json(meta, rules).dump() << '\n';
    for (const auto& rule : rules.rules()) out << rule_json(rule, rules.vocab()).dump() << '\n';
}

RuleDb read_rule_db(std::istream& in) {
    RuleDb db;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<RawRule> raws;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            auto j = ojson::parse(line);
            if (!have_header) {
                if (j.value("format", "") != kFormat || j.value("version", 0) != kVersion) {
                    throw Error(Errc::format_error, "not a rule database");
                }
                auto& m = db.meta;
                m.vocab_hash = parse_hex(j.at("vocab_hash").get<std::string>());
                m.vocab_size = j.at("vocab_size").get<std::size_t>();
                const auto& t = j.at("thresholds");
                m.thresholds.t_cos_sim = t.at("t_cos_sim").get<double>();
                m.thresholds.t_r_sem = t.at("t_r_sem").get<double>();
                m.thresholds.t_r_orth = t.at("t_r_orth").get<std::size_t>();
                m.thresholds.t_w_sem = t.at("t_w_sem").get<double>();
                m.sampling.sample_cap = j.at("sampling").at("sample_cap").get<std::size_t>();
                m.sampling.seed = j.at("sampling").at("seed").get<std::uint64_t>();
                const auto& o = j.at("options");
                m.concat.max_affix = o.at("max_affix").get<std::size_t>();
                m.concat.min_stem = o.at("min_stem").get<std::size_t>();
                m.concat.group_cap = o.at("group_cap").get<std::size_t>();
                m.templatic.max_derived_len = o.at("max_derived_len").get<std::size_t>();
                const auto& c = j.at("candidates");
                m.candidates.concatenative = c.at("concatenative").get<std::size_t>();
                m.candidates.templatic = c.at("templatic").get<std::size_t>();
                m.candidates.skipped_groups = c.at("skipped_groups").get<std::size_t>();
                have_header = true;
                continue;
            }
            raws.push_back(parse_rule(j));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::format_error, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) throw Error(Errc::format_error, "missing header");

    std::vector<std::u32string> words;
    for (const auto& r : raws) {
        for (const auto& [a, b] : r.pairs) {
            words.push_back(a);
            words.push_back(b);
        }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    db.store = RuleStore(std::move(words));
    for (auto& r : raws) {
        SupportSet support;
        support.reserve(r.pairs.size());
        for (const auto& [a, b] : r.pairs) support.push_back({*db.store.find_word(a), *db.store.find_word(b)});
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        db.store.add(std::move(r.key), std::move(support));
        db.store.rules().back().scores = r.scores;
    }
    return db;
}

void save_rule_db(const std::filesystem::path& path, const RuleDbMeta& meta, const RuleStore& rules) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_failure, "cannot write " + path.string());
    write_rule_db(out, meta, rules);
    if (!out) throw Error(Errc::io_failure, "write failed for " + path.string());
}

RuleDb load_rule_db(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    return read_rule_db(in);
}

void write_rule_summary(std::ostream& out, const std::vector<MorphRule>& rules) {
    char buf[32];
    for (const auto& r : rules) {
        std::snprintf(buf, sizeof buf, "%.6f", r.scores.sem);
        out << r.text() << '\t' << r.scores.orth << '\t' << buf << '\n';
    }
}

}  // namespace semroot
