#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "litcomplex/tagger.hpp"
#include "litcomplex/text.hpp"

namespace litcomplex {

// Ratio reported when a document has passives but no active verbs.
inline constexpr double kPassiveSentinel = 10.0;

struct VoiceCounts {
    std::size_t passive = 0;
    std::size_t active = 0;
    std::size_t verbs = 0;  // VERB + AUX tokens seen
};

// A passive is an AUX from {be, am, is, are, was, were, been, being, get,
// got} followed, skipping adverbs, within two tokens by a past participle
// (irregular list, or a VERB ending in -ed/-en). A token between the
// auxiliary and the participle must itself be an AUX or PRON. Active verbs
// are VERB tokens not consumed as a participle.
VoiceCounts count_voice(std::span<const Sentence> sentences, const WordSet& irregular_participles);

struct PassiveRatio {
    double value = 0;
    bool sentinel = false;  // active == 0 and passive > 0
};

// passive / active. Throws UndefinedFeature when there is no VERB or AUX.
PassiveRatio passive_active_ratio(std::span<const Sentence> sentences, const WordSet& irregular_participles);

// NOUN and ADV.
std::span<const PosTag> default_nominal_tags();

// (count of `numerator_tags`) / VERB count; AUX is not a verb here.
// Throws UndefinedFeature when there are no verbs.
double nominal_ratio(std::span<const Sentence> sentences,
                     std::span<const PosTag> numerator_tags = default_nominal_tags());

// Occurrences of `word` among word tokens / number of word tokens.
double function_word_freq(std::span<const Token> tokens, std::string_view word);
double function_word_freq(std::span<const Sentence> sentences, std::string_view word);

}  // namespace litcomplex
