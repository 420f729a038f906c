#include "litcomplex/syntax_style.hpp"

#include <array>
#include <string>

#include "litcomplex/error.hpp"

namespace litcomplex {

namespace {

const WordSet kPassiveAux = {"be", "am", "is", "are", "was", "were", "been", "being", "get", "got"};

constexpr std::array<PosTag, 2> kNominalTags = {PosTag::Noun, PosTag::Adv};

bool is_participle(const Token& t, const WordSet& irregular) {
    if (!t.is_word()) return false;
    const std::string w = fold_apostrophes(t.normalized);
    if (irregular.contains(w)) return true;
    return t.pos == PosTag::Verb && w.size() > 2 && (w.ends_with("ed") || w.ends_with("en"));
}

}  // namespace

std::span<const PosTag> default_nominal_tags() { return kNominalTags; }

VoiceCounts count_voice(std::span<const Sentence> sentences, const WordSet& irregular) {
    VoiceCounts counts;
    for (const auto& s : sentences) {
        const auto& toks = s.tokens;
        std::vector<bool> consumed(toks.size(), false);
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const Token& t = toks[i];
            if (t.pos == PosTag::Verb || t.pos == PosTag::Aux) ++counts.verbs;
            if (t.pos != PosTag::Aux || !kPassiveAux.contains(t.normalized)) continue;
            std::size_t seen = 0;
            for (std::size_t j = i + 1; j < toks.size() && seen < 2; ++j) {
                const Token& u = toks[j];
                if (!u.is_word()) break;
                if (u.pos == PosTag::Adv) continue;
                ++seen;
                if (!consumed[j] && is_participle(u, irregular)) {
                    consumed[j] = true;
                    ++counts.passive;
                    break;
                }
                if (u.pos != PosTag::Aux && u.pos != PosTag::Pron) break;
            }
        }
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].pos == PosTag::Verb && !consumed[i]) ++counts.active;
        }
    }
    return counts;
}

PassiveRatio passive_active_ratio(std::span<const Sentence> sentences, const WordSet& irregular) {
    const VoiceCounts c = count_voice(sentences, irregular);
    if (c.verbs == 0) throw UndefinedFeature("passive_active_ratio: no verbs");
    if (c.active == 0) {
        if (c.passive > 0) return {kPassiveSentinel, true};
        return {0.0, false};
    }
    return {static_cast<double>(c.passive) / static_cast<double>(c.active), false};
}

double nominal_ratio(std::span<const Sentence> sentences, std::span<const PosTag> numerator_tags) {
    std::size_t numerator = 0;
    std::size_t verbs = 0;
    for (const auto& s : sentences) {
        for (const auto& t : s.tokens) {
            if (t.pos == PosTag::Verb) ++verbs;
            for (auto tag : numerator_tags) {
                if (t.pos == tag) {
                    ++numerator;
                    break;
                }
            }
        }
    }
    if (verbs == 0) throw UndefinedFeature("nominal_ratio: no verbs");
    return static_cast<double>(numerator) / static_cast<double>(verbs);
}

double function_word_freq(std::span<const Token> tokens, std::string_view word) {
    std::size_t words = 0;
    std::size_t hits = 0;
    for (const auto& t : tokens) {
        if (!t.is_word()) continue;
        ++words;
        if (t.normalized == word) ++hits;
    }
    if (words == 0) throw UndefinedFeature("function_word_freq: no words");
    return static_cast<double>(hits) / static_cast<double>(words);
}

double function_word_freq(std::span<const Sentence> sentences, std::string_view word) {
    std::size_t words = 0;
    std::size_t hits = 0;
    for (const auto& s : sentences) {
        for (const auto& t : s.tokens) {
            if (!t.is_word()) continue;
            ++words;
            if (t.normalized == word) ++hits;
        }
    }
    if (words == 0) throw UndefinedFeature("function_word_freq: no words");
    return static_cast<double>(hits) / static_cast<double>(words);
}

}  // namespace litcomplex
