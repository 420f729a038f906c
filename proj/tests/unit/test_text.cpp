#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "litcomplex/corpus.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/rng.hpp"
#include "litcomplex/tagger.hpp"
#include "litcomplex/text.hpp"
#include "synthetic.hpp"

using namespace litcomplex;
namespace tu = litcomplex::testing;
using litcomplex::testing::read_text;

namespace {

const std::string kData = LITCOMPLEX_TEST_DATA;

std::string collapse(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            space = true;
            continue;
        }
        if (space && !out.empty()) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') out.push_back(line);
    }
    return out;
}

void expect_reconstruction(std::string_view text) {
    const auto sents = segment_sentences(text, default_abbreviations());
    std::vector<bool> covered(text.size(), false);
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < sents.size(); ++i) {
        ASSERT_EQ(sents[i].index, i);
        ASSERT_LE(prev_end, sents[i].span.begin);
        ASSERT_LT(sents[i].span.begin, sents[i].span.end);
        for (auto b = sents[i].span.begin; b < sents[i].span.end; ++b) covered[b] = true;
        prev_end = sents[i].span.end;
    }
    for (std::size_t b = 0; b < text.size(); ++b) {
        const char c = text[b];
        const bool ws = c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
        if (!ws) ASSERT_TRUE(covered[b]) << "byte " << b << " not covered";
    }
}

}  // namespace

TEST(Segmentation, TwoSimpleSentences) {
    EXPECT_EQ(segment_sentences("It rained. He left.", default_abbreviations()).size(), 2u);
}

TEST(Segmentation, AbbreviationDoesNotSplit) {
    auto s = segment_sentences("Mr. Smith left. She stayed.", default_abbreviations());
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].span.begin, 0u);
    EXPECT_EQ(s[0].span.end, 15u);
}

TEST(Segmentation, WhitespaceOnlyIsEmpty) {
    EXPECT_TRUE(segment_sentences(" \n\t ", default_abbreviations()).empty());
    EXPECT_TRUE(segment_sentences("", default_abbreviations()).empty());
}

TEST(Segmentation, TrailingFragmentAndClosingQuote) {
    const std::string t = "\"Go!\" she said. And then";
    auto s = segment_sentences(t, default_abbreviations());
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(t.substr(s[0].span.begin, s[0].span.end - s[0].span.begin), "\"Go!\" she said.");
    EXPECT_EQ(t.substr(s[1].span.begin), "And then");
}

TEST(Segmentation, LowercaseContinuationStaysJoined) {
    EXPECT_EQ(segment_sentences("Wait... then go. Now.", default_abbreviations()).size(), 2u);
    EXPECT_EQ(segment_sentences("He met Dr. Who and e.g. Mrs. Hudson.", default_abbreviations()).size(), 1u);
}

TEST(Segmentation, HandAnnotatedExcerpt) {
    const auto text = read_text(kData + "/fixtures/segmentation.txt");
    const auto gold = lines_of(read_text(kData + "/fixtures/segmentation_gold.txt"));
    ASSERT_EQ(gold.size(), 40u);
    const auto sents = segment_sentences(text, default_abbreviations());
    ASSERT_EQ(sents.size(), gold.size());
    for (std::size_t i = 0; i < gold.size(); ++i) {
        EXPECT_EQ(collapse(text.substr(sents[i].span.begin, sents[i].span.end - sents[i].span.begin)), gold[i])
            << "sentence " << i;
    }
}

TEST(Segmentation, ReconstructionOnCorpusTexts) {
    for (const char* id : {"alice", "hamlet", "tempest"}) {
        expect_reconstruction(read_text(kData + "/pd_corpus/" + id + ".txt"));
    }
}

TEST(Segmentation, ReconstructionOnRandomText) {
    const std::string alphabet = "aB .!?\"')(\n\tMr.e.g\xE2\x80\x99\xC3\xA9";
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::string t;
        const auto n = rng.below(120);
        for (std::size_t i = 0; i < n; ++i) t += alphabet[rng.below(alphabet.size())];
        expect_reconstruction(t);
    }
}

TEST(Tokenize, Examples) {
    EXPECT_EQ(tokenize_surfaces("don't stop"), (std::vector<std::string>{"don't", "stop"}));
    EXPECT_EQ(tokenize_surfaces("well-known fact."), (std::vector<std::string>{"well-known", "fact", "."}));
    EXPECT_EQ(tokenize_surfaces("rock--and 'roll'"),
              (std::vector<std::string>{"rock", "-", "-", "and", "'", "roll", "'"}));
}

TEST(Tokenize, HandCountedParagraphs) {
    // hand count: ' Yes , but some crumbs must have got in as well , ' the Hatter
    // grumbled : ' you shouldn't have put it in with the bread-knife . '
    EXPECT_EQ(tokenize("'Yes, but some crumbs must have got in as well,' the Hatter grumbled: "
                       "'you shouldn't have put it in with the bread-knife.'")
                  .size(),
              30u);
    const auto t = tokenize_surfaces("In 1865, Mr. Dodgson's well-known book sold 2,000 copies; don't ask why!");
    const std::vector<std::string> hand = {"In",    "1865",  ",",      "Mr",  ".",   "Dodgson's",
                                           "well-known", "book", "sold", "2", ",", "000",
                                           "copies", ";",  "don't", "ask", "why", "!"};
    EXPECT_EQ(t, hand);
}

TEST(Tokenize, TokenInvariants) {
    const auto text = read_text(kData + "/pd_corpus/alice.txt").substr(0, 20000);
    for (const auto& tok : tokenize(text)) {
        EXPECT_EQ(tok.normalized, to_lower(tok.surface));
        if (tok.is_word()) {
            EXPECT_GE(tok.syllables, 1) << tok.surface;
        } else {
            EXPECT_EQ(tok.syllables, 0);
        }
        if (tok.kind == TokenKind::Punct) EXPECT_EQ(tok.pos, PosTag::Punct);
    }
}

TEST(Tokenize, Utf8LettersAndApostrophes) {
    const auto t = tokenize("Caf\xC3\xA9 isn\xE2\x80\x99t \xC3\x89mile");
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].normalized, "caf\xC3\xA9");
    EXPECT_EQ(t[1].surface, "isn\xE2\x80\x99t");
    EXPECT_EQ(t[2].normalized, "\xC3\xA9mile");
}

TEST(Syllables, RuleExamples) {
    EXPECT_EQ(count_syllables("cat"), 1);
    EXPECT_EQ(count_syllables("table"), 2);
    EXPECT_EQ(count_syllables("readability"), 5);
    EXPECT_EQ(count_syllables("make"), 1);
    EXPECT_EQ(count_syllables("the"), 1);
    EXPECT_EQ(count_syllables("rhythm"), 1);
    EXPECT_EQ(count_syllables("queue"), 1);
    EXPECT_EQ(count_syllables("little"), 2);
    EXPECT_EQ(count_syllables("hmm"), 1);
}

TEST(Tagger, LexiconExamples) {
    auto tagger = LexiconTagger::bundled();
    auto toks = tokenize("the quickly");
    tagger->tag(toks);
    EXPECT_EQ(toks[0].pos, PosTag::Det);
    EXPECT_EQ(toks[1].pos, PosTag::Adv);

    toks = tokenize("It was taken");
    tagger->tag(toks);
    EXPECT_EQ(toks[1].pos, PosTag::Aux);
    EXPECT_EQ(toks[2].pos, PosTag::Verb);
}

TEST(Tagger, SuffixRulesForUnknownWords) {
    auto tagger = LexiconTagger::bundled();
    auto toks = tokenize("the zorbliness of blorpingly zentrification");
    tagger->tag(toks);
    EXPECT_EQ(toks[1].pos, PosTag::Noun);
    EXPECT_EQ(toks[3].pos, PosTag::Adv);
    EXPECT_EQ(toks[4].pos, PosTag::Noun);
    toks = tokenize("they will frobnicate");
    tagger->tag(toks);
    EXPECT_EQ(toks[2].pos, PosTag::Verb);
    toks = tokenize("xqzt");
    tagger->tag(toks);
    EXPECT_EQ(toks[0].pos, PosTag::Noun);
}

TEST(Tagger, HandTaggedFixtureAgreement) {
    auto tagger = LexiconTagger::bundled();
    const auto passages = lines_of(read_text(kData + "/fixtures/tagging.txt"));
    const auto gold = lines_of(read_text(kData + "/fixtures/tagging_gold.txt"));
    ASSERT_EQ(passages.size(), gold.size());
    std::size_t total = 0, agree = 0, words = 0, words_agree = 0;
    for (std::size_t p = 0; p < passages.size(); ++p) {
        auto toks = tokenize(passages[p]);
        tagger->tag(toks);
        std::istringstream in(gold[p]);
        std::vector<std::pair<std::string, std::string>> g;
        for (std::string item; in >> item;) {
            const auto slash = item.rfind('/');
            g.emplace_back(item.substr(0, slash), item.substr(slash + 1));
        }
        ASSERT_EQ(toks.size(), g.size()) << "passage " << p;
        for (std::size_t i = 0; i < g.size(); ++i) {
            ASSERT_EQ(toks[i].surface, g[i].first);
            const bool ok = to_string(toks[i].pos) == g[i].second;
            total++;
            agree += ok;
            if (toks[i].is_word()) {
                words++;
                words_agree += ok;
            }
            if (!ok) std::cout << "  tag mismatch: " << g[i].first << " " << to_string(toks[i].pos) << " vs gold "
                               << g[i].second << "\n";
        }
    }
    ASSERT_GE(total, 200u);
    const double acc = static_cast<double>(agree) / static_cast<double>(total);
    const double word_acc = static_cast<double>(words_agree) / static_cast<double>(words);
    std::cout << "tagging agreement " << acc << " over " << total << " tokens, " << word_acc << " over " << words
              << " words\n";
    EXPECT_GE(acc, 0.85);
    EXPECT_GE(word_acc, 0.85);
}

TEST(Pipeline, DeterministicAndNonEmptySentences) {
    const auto text = read_text(kData + "/pd_corpus/macbeth.txt");
    auto pipe = TextPipeline::bundled();
    const auto a = pipe.process(text);
    const auto b = pipe.process(text);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_FALSE(a[i].tokens.empty());
        ASSERT_EQ(a[i].tokens.size(), b[i].tokens.size());
        for (std::size_t k = 0; k < a[i].tokens.size(); ++k) {
            ASSERT_EQ(a[i].tokens[k].surface, b[i].tokens[k].surface);
            ASSERT_EQ(a[i].tokens[k].pos, b[i].tokens[k].pos);
        }
    }
}

TEST(PosTags, ParseRoundTrip) {
    for (int i = 0; i <= static_cast<int>(PosTag::Other); ++i) {
        const auto t = static_cast<PosTag>(i);
        EXPECT_EQ(parse_pos_tag(to_string(t)), t);
    }
    EXPECT_THROW(parse_pos_tag("NN"), UserError);
}
