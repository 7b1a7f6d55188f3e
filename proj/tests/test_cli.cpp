#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "semroot/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = semroot::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("synth, learn, rank, extract, eval") {
    TempDir d("semroot_cli_pipeline");
    auto s = cli({"synth", "--out", d / "fx", "--n-roots", "30", "--chain-depth", "2"});
    REQUIRE(s.code == 0);
    CHECK(s.out.find("vocabulary=1080") != std::string::npos);

    auto l = cli({"learn", "--vectors", d / "fx/vectors.txt", "--out", d / "rules.jsonl"});
    REQUIRE(l.code == 0);
    CHECK(l.out.rfind("candidates: concatenative=", 0) == 0);
    CHECK(l.out.find("validated: concatenative=") != std::string::npos);

    auto r = cli({"rank", "--db", d / "rules.jsonl"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("tpl:ma<C1><C2>a<C3>\t") != std::string::npos);
    CHECK(r.out.find("pre:") == std::string::npos);
    auto all = cli({"rank", "--db", d / "rules.jsonl", "--kind", "all", "--top", "3"});
    CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 3);

    std::istringstream gold(slurp(d / "fx/gold.tsv"));
    std::string line, chained, root;
    while (std::getline(gold, line)) {
        if (line.find(';') == std::string::npos) continue;
        chained = line.substr(0, line.find('\t'));
        root = line.substr(chained.size() + 1, 3);
        break;
    }
    REQUIRE_FALSE(chained.empty());
    std::ofstream(d / "words.txt") << chained << "\nqqqqqq\n";
    auto words = cli({"extract", "--db", d / "rules.jsonl", "--vectors", d / "fx/vectors.txt", "--words",
                      d / "words.txt"});
    REQUIRE(words.code == 0);
    CHECK(words.out.find(chained + "\t" + root + "\treached_triliteral\t") != std::string::npos);
    CHECK(words.out.find("qqqqqq\tqqqqqq\tinfeasible_stop\t\n") != std::string::npos);

    std::ofstream(d / "all.txt") << slurp(d / "fx/gold.tsv");
    for (const char* mode : {"full", "limited"}) {
        std::vector<std::string> args{"extract", "--db", d / "rules.jsonl", "--vectors", d / "fx/vectors.txt",
                                      "--words", d / "all.txt", "--out", d / std::string(mode) + ".tsv"};
        if (std::string(mode) == "limited") args.push_back("--limited");
        REQUIRE(cli(args).code == 0);
    }
    auto e = cli({"eval", "--gold", d / "fx/gold.tsv", "--pred", "full=" + (d / "full.tsv"), "--pred",
                  "limited=" + (d / "limited.tsv"), "--json", d / "report.json"});
    REQUIRE(e.code == 0);
    CHECK(e.out.find("full\t1080\t1080\t100.00%") != std::string::npos);
    CHECK(e.out.find("limited\t180\t1080\t16.67%") != std::string::npos);
    CHECK(e.out.find("full\t0\t900\nlimited\t0\t0\n") != std::string::npos);
    CHECK(slurp(d / "report.json").find("\"better\"") != std::string::npos);

    // determinism: a second learn yields the same bytes
    REQUIRE(cli({"learn", "--vectors", d / "fx/vectors.txt", "--out", d / "rules2.jsonl"}).code == 0);
    CHECK(slurp(d / "rules.jsonl") == slurp(d / "rules2.jsonl"));
}

TEST_CASE("exit codes") {
    TempDir d("semroot_cli_errors");
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"learn", "--out", d / "x.jsonl"}).code == 1);
    CHECK(cli({"learn", "--vectors", d / "missing.txt", "--out", d / "x.jsonl"}).code == 1);
    CHECK(cli({"rank", "--db", d / "missing.jsonl"}).code == 1);
    CHECK(cli({"--help"}).code == 0);

    std::ofstream(d / "bad.txt") << "2 3\nabc 1 2 3\nxyz 1 2\n";
    auto bad = cli({"learn", "--vectors", d / "bad.txt", "--out", d / "x.jsonl"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error:") != std::string::npos);

    std::ofstream(d / "junk.jsonl") << "not a rule database\n";
    CHECK(cli({"rank", "--db", d / "junk.jsonl"}).code == 2);

    REQUIRE(cli({"synth", "--out", d / "a", "--n-roots", "25"}).code == 0);
    REQUIRE(cli({"synth", "--out", d / "b", "--n-roots", "25", "--seed", "7"}).code == 0);
    REQUIRE(cli({"learn", "--vectors", d / "a/vectors.txt", "--out", d / "a.jsonl"}).code == 0);
    auto mismatch = cli({"extract", "--db", d / "a.jsonl", "--vectors", d / "b/vectors.txt", "--word", "maktab"});
    CHECK(mismatch.code == 2);
    CHECK(mismatch.err.find("hash") != std::string::npos);
    CHECK(cli({"extract", "--db", d / "a.jsonl", "--vectors", d / "a/vectors.txt"}).code == 1);

    CHECK(cli({"synth", "--out", d / "c", "--n-roots", "9", "--alphabet", "bc"}).code == 2);
    CHECK(cli({"synth", "--out", d / "c", "--chain-depth", "3"}).code == 1);
    CHECK(cli({"learn", "--vectors", d / "a/vectors.txt", "--out", d / "y.jsonl", "--t-cos-sim", "1.5"}).code == 2);
}

TEST_CASE("empty vocabulary is not an error") {
    TempDir d("semroot_cli_empty");
    REQUIRE(cli({"synth", "--out", d / "a", "--n-roots", "5"}).code == 0);
    auto r = cli({"learn", "--vectors", d / "a/vectors.txt", "--top-n", "0", "--out", d / "e.jsonl"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(r.out.find("validated: concatenative=0 templatic=0") != std::string::npos);
    auto rank = cli({"rank", "--db", d / "e.jsonl", "--kind", "all"});
    CHECK(rank.code == 0);
    CHECK(rank.out.empty());
}

TEST_CASE("config file values sit between defaults and flags") {
    TempDir d("semroot_cli_config");
    REQUIRE(cli({"synth", "--out", d / "a", "--n-roots", "25"}).code == 0);
    std::ofstream(d / "cfg.toml") << "[learn]\nt-r-orth = 1000\n";
    auto from_file = cli({"--config", d / "cfg.toml", "learn", "--vectors", d / "a/vectors.txt", "--out", d / "f.jsonl"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out.find("validated: concatenative=0 templatic=0") != std::string::npos);
    auto flag = cli({"--config", d / "cfg.toml", "learn", "--vectors", d / "a/vectors.txt", "--out", d / "g.jsonl",
                     "--t-r-orth", "20"});
    REQUIRE(flag.code == 0);
    CHECK(flag.out.find("validated: concatenative=0 templatic=0") == std::string::npos);
}
