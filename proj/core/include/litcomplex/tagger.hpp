#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "litcomplex/text.hpp"

namespace litcomplex {

// Assigns coarse POS tags to the tokens of one sentence in place.
class Tagger {
public:
    virtual ~Tagger() = default;
    virtual void tag(std::span<Token> sentence) const = 0;
};

using WordSet = std::unordered_set<std::string>;

WordSet parse_word_list(std::string_view text);

// Lexicon + suffix-rule tagger. Lexicon lines are "word<TAB>TAG [TAG...]",
// candidates in order of preference; a short context pass picks between
// NOUN and VERB readings and decides auxiliary uses of have/do/get.
class LexiconTagger final : public Tagger {
public:
    LexiconTagger(std::string_view lexicon_text, WordSet irregular_participles);

    static std::shared_ptr<const LexiconTagger> bundled();

    void tag(std::span<Token> sentence) const override;

    const WordSet& participles() const { return participles_; }
    std::size_t lexicon_size() const { return lexicon_.size(); }

private:
    std::vector<PosTag> candidates(const std::string& word) const;

    std::unordered_map<std::string, std::vector<PosTag>> lexicon_;
    WordSet participles_;
};

// Irregular participle, or a word ending in -ed/-en.
bool looks_like_participle(std::string_view normalized, const WordSet& irregular);

}  // namespace litcomplex
