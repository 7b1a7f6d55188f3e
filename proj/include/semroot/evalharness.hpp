#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace semroot {

/// word -> predicted (or gold) root
using RootMap = std::map<std::u32string, std::u32string>;

struct SystemPredictions {
    std::string name;
    RootMap roots;
};

struct EvalReport {
    std::vector<std::string> systems;
    std::size_t n = 0;
    std::vector<std::size_t> correct;
    std::vector<double> accuracy;
    /// better[i][j]: words system i got right and system j got wrong.
    std::vector<std::vector<std::size_t>> better;
};

/// Exact code-point match against gold. Every system must cover the same
/// words and gold must cover them; otherwise Error(coverage_mismatch).
EvalReport evaluate(std::span<const SystemPredictions> systems, const RootMap& gold);

/// Accuracy table followed by the pairwise matrix.
std::string format_report(const EvalReport& report);

nlohmann::ordered_json report_json(const EvalReport& report);

/// `word TAB root [TAB ...]`; extra columns are ignored, so extraction traces
/// can be read directly.
RootMap read_root_tsv(const std::filesystem::path& path);
RootMap parse_root_tsv(std::istream& in);

}  // namespace semroot
