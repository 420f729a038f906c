#include "litcomplex/sentiment.hpp"

#include <algorithm>
#include <cmath>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/resources.hpp"
#include "litcomplex/stats.hpp"

namespace litcomplex {

namespace {

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

std::string_view to_string(LexiconStyle style) {
    return style == LexiconStyle::Vader ? "vader-style" : "syuzhet-style";
}

ValenceLexicon ValenceLexicon::parse(std::string_view text, LexiconStyle style, std::string name) {
    ValenceLexicon lex;
    lex.name_ = std::move(name);
    lex.style_ = style;
    const double bound = style == LexiconStyle::Vader ? 4.0 : 1.0;
    for (const auto& line : resource_lines(text)) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw UserError(lex.name_ + ": expected 'token<TAB>valence', got '" + line + "'");
        std::string token = fold_apostrophes(to_lower(std::string_view(line).substr(0, tab)));
        auto value = csv::parse_double(std::string_view(line).substr(tab + 1));
        if (!value) throw UserError(lex.name_ + ": bad valence in line '" + line + "'");
        if (std::abs(*value) > bound) throw UserError(lex.name_ + ": valence out of range for '" + token + "'");
        if (!lex.entries_.emplace(std::move(token), *value).second) {
            throw UserError(lex.name_ + ": duplicate token in line '" + line + "'");
        }
    }
    return lex;
}

ValenceLexicon ValenceLexicon::bundled(LexiconStyle style) {
    const auto name = style == LexiconStyle::Vader ? resource::vader_lexicon : resource::syuzhet_lexicon;
    return parse(builtin_resource(name), style, std::string(to_string(style)));
}

const double* ValenceLexicon::find(std::string_view token) const {
    auto it = entries_.find(std::string(token));
    return it == entries_.end() ? nullptr : &it->second;
}

ValenceLexicon ValenceLexicon::negated() const {
    ValenceLexicon out = *this;
    for (auto& [_, v] : out.entries_) v = -v;
    return out;
}

double normalize_compound(double raw_sum, double alpha) { return raw_sum / std::sqrt(raw_sum * raw_sum + alpha); }

double score_sentence(std::span<const Token> tokens, const ValenceLexicon& lexicon, const ScoringRules& rules) {
    std::vector<std::string> words;
    int exclamations = 0;
    for (const auto& t : tokens) {
        if (t.is_word()) {
            words.push_back(fold_apostrophes(t.normalized));
        } else if (t.surface == "!") {
            ++exclamations;
        }
    }

    if (lexicon.style() == LexiconStyle::Syuzhet) {
        double total = 0.0;
        std::size_t hits = 0;
        for (const auto& w : words) {
            if (const double* v = lexicon.find(w)) {
                total += *v;
                ++hits;
            }
        }
        if (hits == 0) return 0.0;
        return std::clamp(total / static_cast<double>(hits), -1.0, 1.0);
    }

    auto is_negator = [&](const std::string& w) { return rules.negators.contains(w) || w.ends_with("n't"); };

    double sum = 0.0;
    double pending_boost = 0.0;
    std::size_t boost_at = 0;  // word index of the most recent booster
    for (std::size_t k = 0; k < words.size(); ++k) {
        const std::string& w = words[k];
        if (rules.boosters.contains(w) || rules.dampeners.contains(w)) {
            if (pending_boost != 0.0 && k - boost_at > rules.window) pending_boost = 0.0;
            pending_boost += rules.boosters.contains(w) ? rules.booster_step : -rules.booster_step;
            boost_at = k;
            continue;
        }
        const double* lex = lexicon.find(w);
        if (!lex) continue;
        double v = *lex;
        if (pending_boost != 0.0) {
            if (k - boost_at <= rules.window) v += sign(v) * pending_boost;
            pending_boost = 0.0;
        }
        const std::size_t from = k >= rules.window ? k - rules.window : 0;
        for (std::size_t j = from; j < k; ++j) {
            if (is_negator(words[j])) {
                v *= -rules.negation_scale;
                break;
            }
        }
        sum += v;
    }
    sum += sign(sum) * rules.exclamation_step * std::min(exclamations, rules.max_exclamations);
    return normalize_compound(sum, rules.alpha);
}

SentimentArc build_arc(std::string doc_id, std::span<const Sentence> sentences, const ValenceLexicon& lexicon,
                       const ScoringRules& rules) {
    if (sentences.empty()) throw UndefinedFeature("sentiment arc: no sentences");
    SentimentArc arc;
    arc.doc_id = std::move(doc_id);
    arc.lexicon_name = lexicon.name();
    arc.values.reserve(sentences.size());
    for (const auto& s : sentences) arc.values.push_back(score_sentence(s.tokens, lexicon, rules));
    arc.mean = stats::mean(arc.values);
    arc.sd = stats::population_sd(arc.values);
    return arc;
}

}  // namespace litcomplex
