#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litcomplex/tagger.hpp"
#include "litcomplex/text.hpp"

namespace litcomplex {

// Mean segmental type-token ratio over consecutive, disjoint segments of
// exactly `segment_size` word tokens; the trailing remainder is discarded.
// Non-word tokens are ignored. Throws UndefinedFeature when there are fewer
// than `segment_size` words.
double msttr(std::span<const Token> tokens, std::size_t segment_size = 100);
double msttr(std::span<const std::string> normalized_words, std::size_t segment_size = 100);

// Whole-document counts the readability formulas are built from.
struct TextCounts {
    double sentences = 0;
    double words = 0;
    double syllables = 0;
    double polysyllables = 0;  // words with >= 3 syllables
    double letters = 0;
    double difficult_words = 0;  // words not on the easy-word list
};

struct ReadabilityScores {
    double flesch_re = 0;
    double fk_grade = 0;
    double smog = 0;
    double ari = 0;
    double dale_chall = 0;
};

inline constexpr std::size_t kMinReadabilitySentences = 30;

TextCounts count_text(std::span<const Sentence> sentences, const WordSet& easy_words);

// Standard coefficients. SMOG uses full counts scaled to 30
// sentences rather than the sampled variant.
ReadabilityScores readability_from_counts(const TextCounts& counts);

// Throws UndefinedFeature for fewer than 30 sentences.
ReadabilityScores readability(std::span<const Sentence> sentences, const WordSet& easy_words);

WordSet default_easy_words();

// Per-corpus composite: mean of the z-scores of the five indices with
// Flesch Reading Ease negated, so larger means harder. Columns with zero
// variance contribute 0.
std::vector<double> readability_composite(std::span<const ReadabilityScores> scores);

inline constexpr int kBzip2BlockSize = 9;  // x 100 kB

std::size_t bzip2_compressed_size(std::string_view bytes);

// First `n_sentences` sentence texts joined with '\n', then
// original bytes / bzip2 bytes. Throws UndefinedFeature for empty input.
double compression_ratio(std::string_view text, std::span<const Sentence> sentences,
                         std::size_t n_sentences = 1500);

std::string join_sentences(std::string_view text, std::span<const Sentence> sentences, std::size_t n_sentences);

}  // namespace litcomplex
