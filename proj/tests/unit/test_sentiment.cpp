#include <gtest/gtest.h>

#include <cmath>

#include "litcomplex/corpus.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/rng.hpp"
#include "litcomplex/sentiment.hpp"
#include "litcomplex/stats.hpp"
#include "synthetic.hpp"

using namespace litcomplex;
namespace tu = litcomplex::testing;

namespace {

const std::string kData = LITCOMPLEX_TEST_DATA;

ValenceLexicon small_lexicon() {
    return ValenceLexicon::parse("good\t3.0\nbad\t-2.5\nfine\t1.0\nawful\t-3.4\n", LexiconStyle::Vader, "small");
}

double score(std::string_view text, const ValenceLexicon& lex) {
    const auto toks = tokenize(text);
    return score_sentence(toks, lex);
}

// Sentences mixing lexicon words, boosters, negators, neutral fillers and '!'.
std::vector<std::string> generated_sentences(const ValenceLexicon& lex, std::size_t n, std::uint64_t seed) {
    const std::vector<std::string> valenced = {"good", "bad", "happy", "sad", "love", "hate", "terrible",
                                               "wonderful", "fear", "hope", "angry", "kind"};
    const std::vector<std::string> fillers = {"the", "house", "walked", "river", "slowly", "table", "window"};
    const std::vector<std::string> modifiers = {"very", "extremely", "slightly", "not", "never", "don't"};
    Rng rng(seed);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string s;
        const auto len = 4 + rng.below(12);
        for (std::size_t k = 0; k < len; ++k) {
            const auto pick = rng.below(10);
            const auto& pool = pick < 4 ? valenced : pick < 7 ? fillers : modifiers;
            s += pool[rng.below(pool.size())] + " ";
        }
        s += std::string(rng.below(5), '!');
        out.push_back(s);
    }
    for (const auto& w : valenced) EXPECT_NE(lex.find(w), nullptr) << w;
    return out;
}

}  // namespace

TEST(Compound, HandComputedCases) {
    // s / sqrt(s^2 + 15) at values where s^2 + 15 is a perfect square.
    const std::vector<std::pair<double, double>> cases = {
        {0.0, 0.0},          {1.0, 1.0 / 4.0},     {-1.0, -1.0 / 4.0},   {7.0, 7.0 / 8.0},
        {-7.0, -7.0 / 8.0},  {11.0 / 3.0, 11.0 / 16.0}, {7.0 / 4.0, 7.0 / 17.0}, {11.0 / 4.0, 11.0 / 19.0},
        {17.0 / 4.0, 17.0 / 23.0}, {59.0 / 4.0, 59.0 / 61.0}};
    for (const auto& [s, expected] : cases) EXPECT_NEAR(normalize_compound(s), expected, 1e-9) << s;
}

TEST(Score, Examples) {
    const auto lex = small_lexicon();
    EXPECT_EQ(score("The table stood there.", lex), 0.0);
    EXPECT_NEAR(score("good", lex), 3.0 / std::sqrt(24.0), 1e-12);
    EXPECT_NEAR(score("good", lex), 0.6124, 1e-4);

    const double plain = score("It was good.", lex);
    const double negated = score("It was not good.", lex);
    EXPECT_LT(negated, 0.0);
    EXPECT_LT(std::abs(negated), std::abs(plain));
    EXPECT_NEAR(negated, normalize_compound(-0.74 * 3.0), 1e-12);
    EXPECT_NEAR(score("It wasn't good.", lex), negated, 1e-12);

    EXPECT_NEAR(score("very good", lex), normalize_compound(3.293), 1e-12);
    EXPECT_NEAR(score("slightly bad", lex), normalize_compound(-2.5 + 0.293), 1e-12);
    EXPECT_NEAR(score("good!!", lex), normalize_compound(3.0 + 2 * 0.292), 1e-12);
    EXPECT_NEAR(score("bad!!!!!", lex), normalize_compound(-2.5 - 3 * 0.292), 1e-12);
    // negator outside the three-word window
    EXPECT_NEAR(score("not a b c good", lex), normalize_compound(3.0), 1e-12);
    EXPECT_NEAR(score("not a b good", lex), normalize_compound(-2.22), 1e-12);
}

TEST(Score, SyuzhetStyleIsMeanOfHitsClipped) {
    const auto lex = ValenceLexicon::parse("joy\t1\ngloom\t-0.5\nsun\t0.75\n", LexiconStyle::Syuzhet, "s");
    EXPECT_NEAR(score("joy and gloom and sun", lex), (1 - 0.5 + 0.75) / 3.0, 1e-12);
    EXPECT_EQ(score("not joy!!!", lex), 1.0);
    EXPECT_EQ(score("nothing here", lex), 0.0);
}

TEST(Lexicon, Validation) {
    EXPECT_THROW(ValenceLexicon::parse("a\t4.5\n", LexiconStyle::Vader, "x"), UserError);
    EXPECT_THROW(ValenceLexicon::parse("a\t1.5\n", LexiconStyle::Syuzhet, "x"), UserError);
    EXPECT_THROW(ValenceLexicon::parse("a\t1\nA\t2\n", LexiconStyle::Vader, "x"), UserError);
    EXPECT_THROW(ValenceLexicon::parse("a 1\n", LexiconStyle::Vader, "x"), UserError);
    const auto v = ValenceLexicon::bundled(LexiconStyle::Vader);
    const auto s = ValenceLexicon::bundled(LexiconStyle::Syuzhet);
    EXPECT_GT(v.size(), 5000u);
    EXPECT_GT(s.size(), 1000u);
}

TEST(Properties, NegationFlipsSignOnGeneratedSentences) {
    const auto lex = ValenceLexicon::bundled(LexiconStyle::Vader);
    const std::vector<std::string> valenced = {"good", "bad", "happy", "sad", "love", "hate", "terrible",
                                               "wonderful", "fear", "hope", "angry", "kind"};
    const std::vector<std::string> fillers = {"the", "house", "walked", "river", "slowly", "table", "window"};
    for (const auto& f : fillers) ASSERT_EQ(lex.find(f), nullptr) << f;
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        std::string pre, post;
        for (auto k = rng.below(6); k > 0; --k) pre += fillers[rng.below(fillers.size())] + " ";
        for (auto k = rng.below(6); k > 0; --k) post += " " + fillers[rng.below(fillers.size())];
        const auto& w = valenced[rng.below(valenced.size())];
        const std::string bang(rng.below(4), '!');
        const double a = score(pre + w + post + bang, lex);
        const double b = score(pre + "not " + w + post + bang, lex);
        ASSERT_NE(a, 0.0);
        EXPECT_EQ(std::signbit(a), !std::signbit(b)) << pre + w + post;
        EXPECT_LT(std::abs(b), std::abs(a));
    }
}

TEST(Properties, NegatedLexiconNegatesEveryScore) {
    const auto lex = ValenceLexicon::bundled(LexiconStyle::Vader);
    const auto neg = lex.negated();
    const auto syu = ValenceLexicon::bundled(LexiconStyle::Syuzhet);
    const auto syu_neg = syu.negated();
    for (const auto& s : generated_sentences(lex, 100, 23)) {
        const auto toks = tokenize(s);
        const double a = score_sentence(toks, lex);
        EXPECT_EQ(score_sentence(toks, neg), -a) << s;
        EXPECT_GE(a, -1.0);
        EXPECT_LE(a, 1.0);
        EXPECT_EQ(score_sentence(toks, syu_neg), -score_sentence(toks, syu)) << s;
    }
}

TEST(Arc, NeutralDocumentAndPopulationSd) {
    auto pipe = TextPipeline::bundled();
    const auto arc = build_arc("d", pipe.process("The table stood. A door opened. Rain."), small_lexicon());
    EXPECT_EQ(arc.values, (std::vector<double>{0, 0, 0}));
    EXPECT_EQ(arc.mean, 0.0);
    EXPECT_EQ(arc.sd, 0.0);
    const std::vector<double> v = {1.0, -1.0};
    EXPECT_EQ(stats::mean(v), 0.0);
    EXPECT_EQ(stats::population_sd(v), 1.0);
    EXPECT_THROW(build_arc("e", {}, small_lexicon()), UndefinedFeature);
}

TEST(Arc, ExcerptMatchesRescoring) {
    auto pipe = TextPipeline::bundled();
    const auto sents = pipe.process(tu::read_text(kData + "/pd_corpus/alice.txt").substr(0, 40000));
    const auto lex = ValenceLexicon::bundled(LexiconStyle::Vader);
    const auto arc = build_arc("alice", sents, lex);
    ASSERT_EQ(arc.values.size(), sents.size());
    double sum = 0;
    for (const auto& s : sents) sum += score_sentence(s.tokens, lex);
    const double mean = sum / static_cast<double>(sents.size());
    double ss = 0;
    bool all_equal = true;
    for (std::size_t i = 0; i < sents.size(); ++i) {
        const double v = score_sentence(sents[i].tokens, lex);
        ASSERT_EQ(arc.values[i], v);
        ASSERT_GE(v, -1.0);
        ASSERT_LE(v, 1.0);
        ss += (v - mean) * (v - mean);
        all_equal = all_equal && v == arc.values[0];
    }
    EXPECT_NEAR(arc.mean, mean, 1e-12);
    EXPECT_NEAR(arc.sd, std::sqrt(ss / static_cast<double>(sents.size())), 1e-12);
    EXPECT_EQ(arc.sd == 0.0, all_equal);
    const auto again = build_arc("alice", sents, lex);
    EXPECT_EQ(again.values, arc.values);
}
