#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "litcomplex/corpus.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/experiments.hpp"
#include "synthetic.hpp"

using namespace litcomplex;
namespace tu = litcomplex::testing;
namespace fs = std::filesystem;

namespace {

void put(const fs::path& p, std::string_view s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

const char* kHeader = "id,title,author,year,canon,nobel,prize,bestseller,avg_rating\n";

fs::path three_doc_corpus(const std::string& name, bool drop_third = false) {
    auto dir = tu::scratch_dir(name);
    put(dir / "metadata.csv", std::string(kHeader) +
                                  "a,Alpha,Ann,1901,1,0,0,0,4.1\n"
                                  "b,\"Beta, the Second\",Bob,1950,0,1,1,0,\n"
                                  "c,Gamma,Cy,2001,0,0,0,1,3.2\n");
    put(dir / "a.txt", "First text. It is short.");
    put(dir / "b.txt", "Second text.");
    if (!drop_third) put(dir / "c.txt", "Third.");
    return dir;
}

}  // namespace

TEST(LoadCorpus, ThreeFilesThreeRows) {
    auto dir = three_doc_corpus("corpus3");
    auto load = load_corpus(dir, dir / "metadata.csv");
    EXPECT_TRUE(load.missing.empty());
    ASSERT_EQ(load.dataset.documents.size(), 3u);
    EXPECT_EQ(load.dataset.labels.size(), 3u);
    EXPECT_EQ(load.dataset.documents[1].title, "Beta, the Second");
    EXPECT_EQ(load.dataset.documents[1].year, 1950);
    EXPECT_TRUE(load.dataset.labels.at("b").nobel);
    EXPECT_TRUE(load.dataset.labels.at("b").prize);
    EXPECT_FALSE(load.dataset.labels.at("b").avg_rating.has_value());
    EXPECT_DOUBLE_EQ(*load.dataset.labels.at("a").avg_rating, 4.1);
    EXPECT_EQ(load.dataset.documents[0].text, "First text. It is short.");
    load.dataset.check_invariants();
}

TEST(LoadCorpus, MissingFileIsReportedAndSkipped) {
    auto dir = three_doc_corpus("corpus2", true);
    auto load = load_corpus(dir, dir / "metadata.csv");
    ASSERT_EQ(load.dataset.documents.size(), 2u);
    ASSERT_EQ(load.missing, std::vector<std::string>{"c"});
    EXPECT_EQ(load.dataset.labels.size(), load.dataset.documents.size());
}

TEST(LoadCorpus, FatalErrors) {
    auto dir = tu::scratch_dir("corpus_bad");
    EXPECT_THROW(load_corpus(dir, dir / "nope.csv"), UserError);

    put(dir / "metadata.csv", std::string(kHeader) + "a,A,X,1900,1,0,0,0,\na,B,Y,1900,0,0,0,0,\n");
    put(dir / "a.txt", "x");
    EXPECT_THROW(load_corpus(dir, dir / "metadata.csv"), UserError);

    put(dir / "metadata.csv", std::string(kHeader) + "a,A,X,1900,yes,0,0,0,\n");
    try {
        load_corpus(dir, dir / "metadata.csv");
        FAIL();
    } catch (const UserError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }

    put(dir / "metadata.csv", std::string(kHeader) + "a,A,X,1900,1,0,0,0,7.5\n");
    EXPECT_THROW(load_corpus(dir, dir / "metadata.csv"), UserError);

    put(dir / "metadata.csv", "id,title\na,A\n");
    EXPECT_THROW(load_corpus(dir, dir / "metadata.csv"), UserError);
}

TEST(LoadCorpus, UnratedDocumentExcludedFromRatingTask) {
    // 12 rated above, 12 at or below, one unrated; brute-force the expected membership.
    auto corpus_layout = tu::protocol_layout();
    corpus_layout.documents = 25;
    corpus_layout.ranges = {{{0, 0}, {0, 0}, {0, 0}, {0, 0}}};
    corpus_layout.rating.assign(25, 0);
    for (std::size_t i = 0; i < 12; ++i) corpus_layout.rating[i] = 1;
    corpus_layout.rating[24] = -1;
    auto c = tu::make_corpus(corpus_layout, 3);

    SplitOptions opt;
    opt.min_class_size = 10;
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto split = make_rating_task(c.dataset, c.features, seed, opt);
        for (const auto* part : {&split.train, &split.test}) {
            for (const auto& s : *part) seen.insert(c.features.ids[s.row]);
        }
    }
    EXPECT_EQ(seen.count(c.features.ids[24]), 0u);
    std::size_t rated = 0;
    for (const auto& doc : c.dataset.documents) rated += c.dataset.labels.at(doc.id).avg_rating.has_value();
    EXPECT_EQ(rated, 24u);
    EXPECT_EQ(seen.size(), 24u);
}

TEST(Dataset, InvariantCatchesDanglingLabel) {
    Dataset ds;
    ds.documents.push_back(Document{"a", "", "", 0, ""});
    ds.labels["a"] = {};
    ds.check_invariants();
    ds.labels["ghost"] = {};
    EXPECT_THROW(ds.check_invariants(), InvariantError);
    ds.labels.erase("ghost");
    ds.external_scores["ghost"] = 3.0;
    EXPECT_THROW(ds.check_invariants(), InvariantError);
}
