#include "semroot/jzr.hpp"

#include <cstdio>

namespace semroot {

std::optional<std::u32string> inverse_apply(const RuleKey& rule, std::u32string_view word) {
    if (const auto* c = std::get_if<ConcatRule>(&rule)) {
        if (word.size() < c->to.size()) return std::nullopt;
        if (c->side == Side::prefix) {
            if (word.substr(0, c->to.size()) != c->to) return std::nullopt;
            return c->from + std::u32string(word.substr(c->to.size()));
        }
        if (word.substr(word.size() - c->to.size()) != c->to) return std::nullopt;
        return std::u32string(word.substr(0, word.size() - c->to.size())) + c->from;
    }
    // A template fixes every slot position, so a match is unique when it exists.
    return std::get<Template>(rule).match(word);
}

std::optional<std::u32string> forward_apply(const RuleKey& rule, std::u32string_view word) {
    if (const auto* c = std::get_if<ConcatRule>(&rule)) {
        return inverse_apply(ConcatRule{c->side, c->to, c->from}, word);
    }
    if (word.size() != 3) return std::nullopt;
    return std::get<Template>(rule).render(word);
}

RulePartition partition_rules(const RuleStore& validated, ExtractMode mode) {
    RulePartition p;
    const auto& rules = validated.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (const auto* c = std::get_if<ConcatRule>(&rules[i].key)) {
            if (c->from.empty() && !c->to.empty()) {
                p.add.push_back(i);
            } else if (!c->from.empty() && !c->to.empty()) {
                p.rep.push_back(i);
            }
        } else if (mode == ExtractMode::full) {
            p.add.push_back(i);
        }
    }
    return p;
}

const char* status_name(TraceStatus status) {
    return status == TraceStatus::reached_triliteral ? "reached_triliteral" : "infeasible_stop";
}

RootExtractor::RootExtractor(const RuleStore& validated, const EmbeddingTable& table, Thresholds thresholds,
                             SamplingParams sampling, ExtractMode mode)
    : store_(&validated),
      space_(validated.vocab(), table),
      thresholds_(thresholds),
      sampling_(sampling),
      mode_(mode),
      in_add_(validated.rules().size(), false),
      in_rep_(validated.rules().size(), false) {
    auto partition = partition_rules(validated, mode);
    for (auto i : partition.add) in_add_[i] = true;
    for (auto i : partition.rep) in_rep_[i] = true;
    const auto& rules = validated.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
        if (!in_add_[i] && !in_rep_[i]) continue;
        for (const auto& p : rules[i].support) by_derived_[p.derived].push_back({i, p.source});
    }
}

std::optional<TraceStep> RootExtractor::best_step(WordId derived, const std::vector<bool>& allowed) const {
    auto it = by_derived_.find(derived);
    if (it == by_derived_.end()) return std::nullopt;

    const auto& rules = store_->rules();
    const auto& vocab = store_->vocab();
    const auto& word = vocab[derived];
    const MorphRule* best = nullptr;
    TraceStep best_step;
    for (const auto& cand : it->second) {
        if (!allowed[cand.rule]) continue;
        const auto& rule = rules[cand.rule];
        auto source = inverse_apply(rule.key, word);
        if (!source || *source != vocab[cand.source] || source->size() >= word.size()) continue;
        auto s = score_w_sem({cand.source, derived}, rule, space_, thresholds_.t_cos_sim, sampling_);
        if (s.empty || !(s.value > thresholds_.t_w_sem)) continue;

        bool better = best == nullptr;
        if (!better) {
            if (s.value != best_step.score) {
                better = s.value > best_step.score;
            } else if (rule.scores.sem != best->scores.sem) {
                better = rule.scores.sem > best->scores.sem;
            } else if (rule.scores.orth != best->scores.orth) {
                better = rule.scores.orth > best->scores.orth;
            } else {
                better = rule.text() < best_step.rule_key;
            }
        }
        if (better) {
            best = &rule;
            best_step = TraceStep{rule.text(), *source, s.value};
        }
    }
    if (!best) return std::nullopt;
    return best_step;
}

ExtractionTrace RootExtractor::extract(std::u32string_view word) const {
    ExtractionTrace trace;
    trace.start = std::u32string(word);
    std::u32string current = trace.start;
    while (current.size() > 3) {
        auto id = store_->find_word(current);
        std::optional<TraceStep> step;
        if (id) {
            step = best_step(*id, in_add_);
            if (!step) step = best_step(*id, in_rep_);
        }
        if (!step) {
            trace.final_word = current;
            trace.status = TraceStatus::infeasible_stop;
            return trace;
        }
        current = step->word;
        trace.steps.push_back(std::move(*step));
    }
    trace.final_word = current;
    trace.status = TraceStatus::reached_triliteral;
    return trace;
}

ExtractionTrace extract_root(std::u32string_view word, const RuleStore& validated, const EmbeddingTable& table,
                             const Thresholds& thresholds, const SamplingParams& sampling) {
    return RootExtractor(validated, table, thresholds, sampling, ExtractMode::full).extract(word);
}

ExtractionTrace extract_root_limited(std::u32string_view word, const RuleStore& validated,
                                     const EmbeddingTable& table, const Thresholds& thresholds,
                                     const SamplingParams& sampling) {
    return RootExtractor(validated, table, thresholds, sampling, ExtractMode::limited).extract(word);
}

std::string format_trace(const ExtractionTrace& trace) {
    std::string out = utf8_encode(trace.start);
    out += '\t';
    out += utf8_encode(trace.final_word);
    out += '\t';
    out += status_name(trace.status);
    out += '\t';
    char buf[32];
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        if (i) out += ';';
        std::snprintf(buf, sizeof buf, "%.6f", s.score);
        out += s.rule_key;
        out += "→";
        out += utf8_encode(s.word);
        out += '@';
        out += buf;
    }
    return out;
}

}  // namespace semroot
