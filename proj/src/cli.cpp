#include "semroot/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "semroot/embeddings.hpp"
#include "semroot/error.hpp"
#include "semroot/evalharness.hpp"
#include "semroot/jzr.hpp"
#include "semroot/rule_db.hpp"
#include "semroot/rulestore.hpp"
#include "semroot/synthlang.hpp"

namespace semroot::cli {

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct VectorOptions {
    std::string path;
    std::string format = "headered";
    std::optional<std::size_t> top_n;
};

struct LearnOptions {
    VectorOptions vectors;
    std::string out;
    Thresholds thresholds;
    SamplingParams sampling;
    ConcatOptions concat;
    TemplaticOptions templatic;
};

struct RankOptions {
    std::string db;
    std::string kind = "templatic";
    std::size_t top = 30;
};

struct ExtractOptions {
    std::string db;
    VectorOptions vectors;
    std::vector<std::string> words;
    std::string words_file;
    std::string out;
    bool limited = false;
};

struct SynthOptions {
    std::string out;
    std::size_t n_roots = 200;
    std::size_t dim = 64;
    double sigma = 0.01;
    double offset_scale = 2.0;
    std::uint64_t seed = 42;
    int chain_depth = 1;
    std::string alphabet;
    std::vector<std::string> templates;
    std::vector<std::string> prefixes;
    std::vector<std::string> suffixes;
};

struct EvalOptions {
    std::string gold;
    std::vector<std::string> preds;
    std::string json;
};

void add_vector_options(CLI::App* cmd, VectorOptions& v) {
    cmd->add_option("--vectors", v.path, "Word vector text file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--format", v.format, "Vector file layout")
        ->check(CLI::IsMember({"headered", "headerless"}))
        ->capture_default_str();
    cmd->add_option("--top-n", v.top_n, "Keep only the first N distinct words");
}

LoadResult load_vectors(const VectorOptions& v, std::ostream& err) {
    auto format = v.format == "headerless" ? VectorFormat::headerless : VectorFormat::headered;
    auto loaded = load_embeddings(v.path, format, v.top_n);
    if (loaded.duplicates) {
        err << "warning: " << loaded.duplicates << " duplicate word(s) in " << v.path << "; first occurrence kept\n";
    }
    return loaded;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::io_failure, "cannot write " + path);
    return f;
}

int cmd_learn(const LearnOptions& o, std::ostream& out, std::ostream& err) {
    o.thresholds.validate();
    auto loaded = load_vectors(o.vectors, err);
    const auto& table = loaded.table;
    if (table.empty()) err << "warning: empty vocabulary; writing an empty rule database\n";

    RuleDbMeta meta;
    meta.vocab_hash = vocabulary_hash(table.words());
    meta.vocab_size = table.size();
    meta.thresholds = o.thresholds;
    meta.sampling = o.sampling;
    meta.concat = o.concat;
    meta.templatic = o.templatic;

    auto candidates = build_candidates(table.words(), o.concat, o.templatic, &meta.candidates);
    if (meta.candidates.skipped_groups) {
        err << "warning: skipped " << meta.candidates.skipped_groups << " stem group(s) above --group-cap\n";
    }
    score_rules(candidates, table, o.thresholds.t_cos_sim, o.sampling);
    auto validated = prune_rules(candidates, o.thresholds);
    save_rule_db(o.out, meta, validated);

    std::size_t vc = 0, vt = 0;
    for (const auto& r : validated.rules()) (r.kind() == RuleKind::concatenative ? vc : vt)++;
    out << "candidates: concatenative=" << meta.candidates.concatenative
        << " templatic=" << meta.candidates.templatic << "; validated: concatenative=" << vc
        << " templatic=" << vt << '\n';
    return 0;
}

int cmd_rank(const RankOptions& o, std::ostream& out) {
    auto db = load_rule_db(o.db);
    KindFilter filter = o.kind == "templatic"       ? KindFilter::templatic
                        : o.kind == "concatenative" ? KindFilter::concatenative
                                                    : KindFilter::all;
    write_rule_summary(out, rank_rules(db.store, filter, o.top));
    return 0;
}

int cmd_extract(const ExtractOptions& o, std::ostream& out, std::ostream& err) {
    auto db = load_rule_db(o.db);
    auto loaded = load_vectors(o.vectors, err);
    const auto hash = vocabulary_hash(loaded.table.words());
    if (hash != db.meta.vocab_hash) {
        throw Error(Errc::vocab_hash_mismatch, "vectors hash " + hash_hex(hash) + " but rules were learned from " +
                                                   hash_hex(db.meta.vocab_hash));
    }

    std::vector<std::u32string> words;
    for (const auto& w : o.words) words.push_back(utf8_decode(w));
    if (!o.words_file.empty()) {
        std::ifstream in(o.words_file, std::ios::binary);
        if (!in) throw Error(Errc::io_failure, "cannot open " + o.words_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto end = line.find_first_of(" \t");
            line = line.substr(0, end);
            if (!line.empty()) words.push_back(utf8_decode(line));
        }
    }

    RootExtractor extractor(db.store, loaded.table, db.meta.thresholds, db.meta.sampling,
                            o.limited ? ExtractMode::limited : ExtractMode::full);
    std::ofstream file;
    if (!o.out.empty()) file = open_out(o.out);
    std::ostream& sink = o.out.empty() ? out : file;
    for (const auto& w : words) sink << format_trace(extractor.extract(w)) << '\n';
    return 0;
}

int cmd_synth(const SynthOptions& o, std::ostream& out) {
    auto config = SynthConfig::defaults();
    config.n_roots = o.n_roots;
    config.dim = o.dim;
    config.noise_sigma = o.sigma;
    config.offset_scale = o.offset_scale;
    config.seed = o.seed;
    config.chain_depth = o.chain_depth;
    if (!o.alphabet.empty()) config.alphabet = utf8_decode(o.alphabet);
    if (!o.templates.empty() || !o.prefixes.empty() || !o.suffixes.empty()) {
        config.templates.clear();
        config.affixes.clear();
        for (const auto& t : o.templates) {
            auto parsed = Template::parse(t);
            if (!parsed) throw Error(Errc::invalid_config, "bad template '" + t + "'");
            config.templates.push_back(*parsed);
        }
        for (const auto& p : o.prefixes) config.affixes.push_back({Side::prefix, U"", utf8_decode(p)});
        for (const auto& s : o.suffixes) config.affixes.push_back({Side::suffix, U"", utf8_decode(s)});
    }
    auto fixture = generate(config);
    write_fixture(o.out, fixture);
    out << "vocabulary=" << fixture.vocab.size() << " planted=" << fixture.planted.size() << " dir=" << o.out
        << '\n';
    return 0;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    RootMap gold;
    for (auto& [word, root] : read_root_tsv(o.gold)) gold.emplace(word, root);
    std::vector<SystemPredictions> systems;
    for (const auto& spec : o.preds) {
        SystemPredictions s;
        auto eq = spec.find('=');
        std::string path = spec;
        if (eq != std::string::npos) {
            s.name = spec.substr(0, eq);
            path = spec.substr(eq + 1);
        } else {
            s.name = std::filesystem::path(spec).stem().string();
        }
        s.roots = read_root_tsv(path);
        systems.push_back(std::move(s));
    }
    auto report = evaluate(systems, gold);
    out << format_report(report);
    if (!o.json.empty()) {
        auto f = open_out(o.json);
        f << report_json(report).dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Unsupervised root-and-pattern morphology learner and root extractor"};
    app.name("semroot");
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file; options go under [learn], [extract], ... sections");

    LearnOptions learn;
    auto* learn_cmd = app.add_subcommand("learn", "Learn and validate morphological rules from word vectors");
    add_vector_options(learn_cmd, learn.vectors);
    learn_cmd->add_option("--out", learn.out, "Rule database to write")->required();
    learn_cmd->add_option("--t-cos-sim", learn.thresholds.t_cos_sim, "Analogy cosine threshold")->capture_default_str();
    learn_cmd->add_option("--t-r-sem", learn.thresholds.t_r_sem, "Rule semantic score threshold")->capture_default_str();
    learn_cmd->add_option("--t-r-orth", learn.thresholds.t_r_orth, "Rule support size threshold")->capture_default_str();
    learn_cmd->add_option("--t-w-sem", learn.thresholds.t_w_sem, "Pair semantic score threshold")->capture_default_str();
    learn_cmd->add_option("--max-affix", learn.concat.max_affix, "Longest affix, in letters")->capture_default_str();
    learn_cmd->add_option("--min-stem", learn.concat.min_stem, "Shortest shared stem")->check(CLI::PositiveNumber)->capture_default_str();
    learn_cmd->add_option("--group-cap", learn.concat.group_cap, "Largest stem group paired")->capture_default_str();
    learn_cmd->add_option("--max-derived-len", learn.templatic.max_derived_len, "Longest templatic word")->capture_default_str();
    learn_cmd->add_option("--sample-cap", learn.sampling.sample_cap, "Support pairs scored per rule (0: all)")->capture_default_str();
    learn_cmd->add_option("--seed", learn.sampling.seed, "Sampling seed")->capture_default_str();

    RankOptions rank;
    auto* rank_cmd = app.add_subcommand("rank", "List validated rules by semantic score");
    rank_cmd->add_option("--db", rank.db, "Rule database")->required()->check(CLI::ExistingFile);
    rank_cmd->add_option("--kind", rank.kind)->check(CLI::IsMember({"templatic", "concatenative", "all"}))->capture_default_str();
    rank_cmd->add_option("--top", rank.top)->capture_default_str();

    ExtractOptions extract;
    auto* extract_cmd = app.add_subcommand("extract", "Extract roots and print one trace line per word");
    extract_cmd->add_option("--db", extract.db, "Rule database")->required()->check(CLI::ExistingFile);
    add_vector_options(extract_cmd, extract.vectors);
    extract_cmd->add_option("--word", extract.words, "Word to analyse (repeatable)");
    extract_cmd->add_option("--words", extract.words_file, "File with one word per line")->check(CLI::ExistingFile);
    extract_cmd->add_option("--out", extract.out, "Write traces here instead of stdout");
    extract_cmd->add_flag("--limited", extract.limited, "Use concatenative rules only");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic fixture with planted rules");
    synth_cmd->add_option("--out", synth.out, "Fixture directory")->required();
    synth_cmd->add_option("--n-roots", synth.n_roots)->capture_default_str();
    synth_cmd->add_option("--dim", synth.dim)->capture_default_str();
    synth_cmd->add_option("--sigma", synth.sigma, "Noise standard deviation")->capture_default_str();
    synth_cmd->add_option("--offset-scale", synth.offset_scale)->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed)->capture_default_str();
    synth_cmd->add_option("--chain-depth", synth.chain_depth)->check(CLI::Range(1, 2))->capture_default_str();
    synth_cmd->add_option("--alphabet", synth.alphabet, "Root letters");
    synth_cmd->add_option("--template", synth.templates, "Planted template, e.g. ma<C1><C2>a<C3> (repeatable)");
    synth_cmd->add_option("--prefix", synth.prefixes, "Planted prefix (repeatable)");
    synth_cmd->add_option("--suffix", synth.suffixes, "Planted suffix (repeatable)");

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Score predicted roots against gold");
    eval_cmd->add_option("--gold", eval.gold, "Gold TSV (word TAB root)")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--pred", eval.preds, "System predictions as NAME=PATH (repeatable)")->required();
    eval_cmd->add_option("--json", eval.json, "Also write the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*learn_cmd) return cmd_learn(learn, out, err);
        if (*rank_cmd) return cmd_rank(rank, out);
        if (*extract_cmd) {
            if (extract.words.empty() && extract.words_file.empty()) {
                err << "error: extract needs --word or --words\n";
                return kUsageError;
            }
            return cmd_extract(extract, out, err);
        }
        if (*synth_cmd) return cmd_synth(synth, out);
        if (*eval_cmd) return cmd_eval(eval, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"semroot"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace semroot::cli
