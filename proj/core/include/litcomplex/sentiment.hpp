#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "litcomplex/text.hpp"

namespace litcomplex {

enum class LexiconStyle { Vader, Syuzhet };

std::string_view to_string(LexiconStyle style);

class ValenceLexicon {
public:
    // Lines "token<TAB>valence". Vader-style valences lie in [-4, 4],
    // syuzhet-style in [-1, 1]; duplicates and out-of-range values throw UserError.
    static ValenceLexicon parse(std::string_view text, LexiconStyle style, std::string name);
    static ValenceLexicon bundled(LexiconStyle style);

    const std::string& name() const { return name_; }
    LexiconStyle style() const { return style_; }
    std::size_t size() const { return entries_.size(); }
    const double* find(std::string_view token) const;

    // Same tokens with every valence negated.
    ValenceLexicon negated() const;

private:
    std::string name_;
    LexiconStyle style_ = LexiconStyle::Vader;
    std::unordered_map<std::string, double> entries_;
};

struct ScoringRules {
    std::unordered_set<std::string> negators{"not", "never", "no", "n't", "hardly", "without"};
    std::unordered_set<std::string> boosters{"very", "extremely", "incredibly"};
    std::unordered_set<std::string> dampeners{"slightly", "somewhat"};
    double booster_step = 0.293;
    double negation_scale = 0.74;
    double exclamation_step = 0.292;
    int max_exclamations = 3;
    std::size_t window = 3;  // preceding word tokens checked for negators and boosters
    double alpha = 15.0;     // compound = s / sqrt(s^2 + alpha)
};

// Sentence valence in [-1, 1]. Vader-style lexicons apply the rules;
// syuzhet-style lexicons return the mean valence of lexicon hits, clipped.
double score_sentence(std::span<const Token> tokens, const ValenceLexicon& lexicon,
                      const ScoringRules& rules = {});

double normalize_compound(double raw_sum, double alpha = 15.0);

struct SentimentArc {
    std::string doc_id;
    std::string lexicon_name;
    std::vector<double> values;
    double mean = 0;
    double sd = 0;  // population SD
};

// Throws UndefinedFeature for a document without sentences.
SentimentArc build_arc(std::string doc_id, std::span<const Sentence> sentences, const ValenceLexicon& lexicon,
                       const ScoringRules& rules = {});

}  // namespace litcomplex
