#include "semroot/evalharness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "semroot/error.hpp"
#include "semroot/word.hpp"

namespace semroot {

EvalReport evaluate(std::span<const SystemPredictions> systems, const RootMap& gold) {
    EvalReport report;
    if (systems.empty()) return report;
    const auto& reference = systems.front().roots;
    for (const auto& s : systems) {
        if (s.roots.size() != reference.size() ||
            !std::equal(s.roots.begin(), s.roots.end(), reference.begin(),
                        [](const auto& a, const auto& b) { return a.first == b.first; })) {
            throw Error(Errc::coverage_mismatch, "system '" + s.name + "' covers a different word set than '" +
                                                     systems.front().name + "'");
        }
    }
    for (const auto& [word, root] : reference) {
        if (!gold.count(word)) {
            throw Error(Errc::coverage_mismatch, "gold has no root for '" + utf8_encode(word) + "'");
        }
    }

    const std::size_t k = systems.size();
    report.n = reference.size();
    report.correct.assign(k, 0);
    report.better.assign(k, std::vector<std::size_t>(k, 0));
    std::vector<bool> right(k);
    for (const auto& [word, unused] : reference) {
        const auto& truth = gold.at(word);
        for (std::size_t i = 0; i < k; ++i) {
            right[i] = systems[i].roots.at(word) == truth;
            if (right[i]) ++report.correct[i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                if (right[i] && !right[j]) ++report.better[i][j];
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        report.systems.push_back(systems[i].name);
        report.accuracy.push_back(report.n ? static_cast<double>(report.correct[i]) / static_cast<double>(report.n)
                                           : 0.0);
    }
    return report;
}

std::string format_report(const EvalReport& report) {
    std::ostringstream out;
    char buf[64];
    out << "system\tcorrect\tn\taccuracy\n";
    for (std::size_t i = 0; i < report.systems.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * report.accuracy[i]);
        out << report.systems[i] << '\t' << report.correct[i] << '\t' << report.n << '\t' << buf << '\n';
    }
    out << '\n' << "better\\worse";
    for (const auto& name : report.systems) out << '\t' << name;
    out << '\n';
    for (std::size_t i = 0; i < report.systems.size(); ++i) {
        out << report.systems[i];
        for (auto c : report.better[i]) out << '\t' << c;
        out << '\n';
    }
    return out.str();
}

nlohmann::ordered_json report_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["n"] = report.n;
    j["systems"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.systems.size(); ++i) {
        j["systems"].push_back(
            {{"name", report.systems[i]}, {"correct", report.correct[i]}, {"accuracy", report.accuracy[i]}});
    }
    j["better"] = report.better;
    return j;
}

RootMap parse_root_tsv(std::istream& in) {
    RootMap roots;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto t1 = line.find('\t');
        if (t1 == std::string::npos) {
            throw Error(Errc::parse_failure, "line " + std::to_string(line_no) + ": expected word TAB root");
        }
        auto t2 = line.find('\t', t1 + 1);
        auto root = line.substr(t1 + 1, t2 == std::string::npos ? std::string::npos : t2 - t1 - 1);
        roots.emplace(utf8_decode(line.substr(0, t1)), utf8_decode(root));
    }
    return roots;
}

RootMap read_root_tsv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot open " + path.string());
    return parse_root_tsv(in);
}

}  // namespace semroot
