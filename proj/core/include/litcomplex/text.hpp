#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace litcomplex {

enum class PosTag : std::uint8_t { Noun, Verb, Aux, Adj, Adv, Pron, Det, Adp, Conj, Num, Part, Punct, Other };

std::string_view to_string(PosTag tag);
// Accepts the upper-case names (NOUN, VERB, ...). Throws UserError otherwise.
PosTag parse_pos_tag(std::string_view name);

enum class TokenKind : std::uint8_t { Word, Number, Punct };

struct Token {
    std::string surface;
    std::string normalized;  // lowercase(surface)
    TokenKind kind = TokenKind::Punct;
    PosTag pos = PosTag::Other;
    int syllables = 0;  // >= 1 for words, 0 otherwise

    bool is_word() const { return kind == TokenKind::Word; }
};

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last byte
};

struct Sentence {
    std::size_t index = 0;
    Span span;
    std::vector<Token> tokens;
};

// Lowercases ASCII and Latin-1 letters; other bytes pass through unchanged.
std::string to_lower(std::string_view s);

// Maps typographic apostrophes (U+2019) to ASCII ' for lexicon lookups.
std::string fold_apostrophes(std::string_view s);

// Lowercased abbreviations without their final period ("mr", "e.g").
using AbbreviationSet = std::unordered_set<std::string>;

AbbreviationSet default_abbreviations();
AbbreviationSet parse_abbreviations(std::string_view text);

// Splits after a run of . ! ? that is followed by whitespace and then an
// upper-case letter or an opening quote, unless the period closes a listed
// abbreviation. Closing quotes/brackets right after the terminator stay with
// the sentence. Spans exclude surrounding whitespace; tokens are left empty.
std::vector<Sentence> segment_sentences(std::string_view text, const AbbreviationSet& abbreviations);

// Words are maximal letter runs with internal apostrophes or hyphens, numbers
// are digit runs, and every other non-space character is its own token.
// Fills surface, normalized, kind and syllables; pos is NUM/PUNCT for
// non-words and Other for words until a tagger runs.
std::vector<Token> tokenize(std::string_view text);

std::vector<std::string> tokenize_surfaces(std::string_view text);

// Vowel groups (a e i o u y), minus a silent final e unless the word ends in
// consonant + "le"; never below 1.
int count_syllables(std::string_view word);

}  // namespace litcomplex
