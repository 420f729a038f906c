#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "litcomplex/error.hpp"
#include "litcomplex/features.hpp"
#include "synthetic.hpp"

using namespace litcomplex;
namespace tu = litcomplex::testing;
using litcomplex::testing::read_text;

namespace {

const std::string kData = LITCOMPLEX_TEST_DATA;

Document pd_doc(const std::string& id, std::size_t max_bytes = std::string::npos) {
    Document d;
    d.id = id;
    d.title = id;
    d.author = "anon";
    d.year = 1600;
    d.text = read_text(kData + "/pd_corpus/" + id + ".txt").substr(0, max_bytes);
    return d;
}

Dataset three_docs() {
    Dataset ds;
    ds.documents = {pd_doc("macbeth"), pd_doc("tempest"), pd_doc("alice")};
    return ds;
}

// Roughly `n` sentences of plain narrative.
std::string sentences(std::size_t n) {
    const char* pool[] = {"The old man walked slowly down to the river.", "She was happy to see the garden again.",
                          "A terrible storm broke over the hills.", "They laughed and sang until the fire died.",
                          "Nobody knew where the letter had been hidden.", "He felt sad and tired after the war."};
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += std::string(pool[(i * 5 + i / 6) % 6]) + " ";
    return out;
}

}  // namespace

TEST(Groups, PartitionColumns) {
    for (auto mode : {ReadabilityMode::Raw, ReadabilityMode::Composite}) {
        std::multiset<std::string> seen;
        for (auto g : kAllGroups) {
            for (const auto& c : group_columns(g, mode)) seen.insert(c);
        }
        const auto all = all_columns(mode);
        EXPECT_EQ(seen, std::multiset<std::string>(all.begin(), all.end()));
    }
    EXPECT_EQ(all_columns().size(), 18u);
    EXPECT_EQ(all_columns(ReadabilityMode::Composite).size(), 14u);
    EXPECT_EQ(group_columns("Perplexity"), std::vector<std::string>{"perplexity"});
    EXPECT_EQ(group_columns("Narrative/Sentiment"),
              (std::vector<std::string>{"mean_valence", "valence_sd", "hurst_vader", "hurst_syuzhet", "apen_vader",
                                        "apen_syuzhet"}));
    EXPECT_EQ(group_columns("syntactic"),
              (std::vector<std::string>{"passive_ratio", "nominal_ratio", "of_freq", "that_freq"}));
    EXPECT_EQ(group_columns(FeatureGroup::Stylistic, ReadabilityMode::Composite),
              (std::vector<std::string>{"msttr", "readability_z", "compression_ratio"}));
    EXPECT_THROW(group_columns("plot"), UserError);
    EXPECT_THROW(group_of("title"), UserError);
}

TEST(Extract, CompleteRowsForFullTexts) {
    ExtractionConfig cfg;
    cfg.threads = 1;
    const auto ex = extract_all(three_docs(), cfg);
    const auto& m = ex.matrix;
    ASSERT_EQ(m.rows(), 3u);
    EXPECT_EQ(m.ids, (std::vector<std::string>{"macbeth", "tempest", "alice"}));
    EXPECT_EQ(m.columns.size(), 18u);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            EXPECT_FALSE(m.missing[i][j]) << m.ids[i] << " " << m.columns[j];
            EXPECT_TRUE(std::isfinite(m.values[i][j]));
        }
        EXPECT_EQ(ex.perplexity[i].source, PerplexitySource::Builtin);
    }
    m.check_invariants();
    EXPECT_EQ(m.meta["perplexity"]["source"], "builtin");
}

TEST(Extract, ShortDocumentMasksHurstOnly) {
    Dataset ds = three_docs();
    Document d;
    d.id = "short";
    d.text = sentences(50);
    ds.documents.push_back(d);
    ExtractionConfig cfg;
    cfg.threads = 2;
    const auto m = extract_all(ds, cfg).matrix;
    const auto row = *m.row_index("short");
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
        const bool is_hurst = m.columns[j].starts_with("hurst_");
        EXPECT_EQ(m.missing[row][j], is_hurst) << m.columns[j];
        EXPECT_EQ(std::isnan(m.values[row][j]), is_hurst);
    }
    const auto counts = m.missing_counts();
    EXPECT_EQ(counts.at("hurst_vader"), 1u);
    EXPECT_EQ(counts.at("msttr"), 0u);
    EXPECT_DOUBLE_EQ(m.missing_fraction(row), 2.0 / 18.0);
}

TEST(Extract, EmptyCorpusIsFatal) {
    Dataset ds;
    Document d;
    d.id = "blank";
    d.text = "   ";
    ds.documents.push_back(d);
    EXPECT_THROW(extract_all(ds, ExtractionConfig{}), UserError);
}

TEST(Extract, ByteIdenticalAcrossRunsAndThreads) {
    ExtractionConfig one;
    one.threads = 1;
    ExtractionConfig four = one;
    four.threads = 4;
    const auto a = extract_all(three_docs(), one);
    const auto b = extract_all(three_docs(), four);
    EXPECT_EQ(features_csv(a.matrix), features_csv(b.matrix));
    EXPECT_EQ(perplexity_csv(a), perplexity_csv(b));
    EXPECT_EQ(a.matrix.meta.dump(), extract_all(three_docs(), one).matrix.meta.dump());
}

TEST(Extract, MissingCountsMatchRecount) {
    Dataset ds = three_docs();
    for (std::size_t n : {5, 30, 60, 120}) {
        Document d;
        d.id = "s" + std::to_string(n);
        d.text = sentences(n);
        ds.documents.push_back(d);
    }
    ExtractionConfig cfg;
    const auto m = extract_all(ds, cfg).matrix;
    const auto counts = m.missing_counts();
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
        std::size_t nan = 0;
        for (const auto& row : m.values) nan += std::isnan(row[j]);
        EXPECT_EQ(counts.at(m.columns[j]), nan) << m.columns[j];
    }
    EXPECT_EQ(m.meta["missing_counts"], nlohmann::json(counts));
}

TEST(Extract, ExternalScoresLeaveUnscoredDocumentMissing) {
    ExternalPerplexity ext{"ext.csv", {{"macbeth", 40.0}, {"tempest", 55.5}}};
    ExternalPerplexity ext2{"ext2.csv", {{"macbeth", 60.0}}};
    const std::array<ExternalPerplexity, 2> sources = {ext, ext2};
    const auto ex = extract_all(three_docs(), ExtractionConfig{}, sources);
    const auto col = *ex.matrix.column_index("perplexity");
    EXPECT_EQ(ex.matrix.values[0][col], 50.0);
    EXPECT_EQ(ex.matrix.values[1][col], 55.5);
    EXPECT_TRUE(ex.matrix.missing[2][col]);
    EXPECT_EQ(ex.matrix.meta["perplexity"]["source"], "external");

    ExtractionConfig fallback;
    fallback.perplexity_fallback_builtin = true;
    const auto fb = extract_all(three_docs(), fallback, sources);
    EXPECT_FALSE(fb.matrix.missing[2][col]);
    EXPECT_EQ(fb.perplexity[2].source, PerplexitySource::Builtin);
    EXPECT_EQ(fb.matrix.meta["perplexity"]["source"], "mixed");
}

TEST(Extract, HeldoutPerplexityDiffersFromInSample) {
    Dataset ds;
    for (const char* id : {"macbeth", "tempest", "lear", "othello", "alice"}) ds.documents.push_back(pd_doc(id, 20000));
    ExtractionConfig in_sample;
    ExtractionConfig heldout;
    heldout.ngram_heldout = true;
    const auto a = extract_all(ds, in_sample);
    const auto b = extract_all(ds, heldout);
    for (std::size_t i = 0; i < ds.documents.size(); ++i) {
        EXPECT_LT(*a.perplexity[i].value, *b.perplexity[i].value) << ds.documents[i].id;
    }
    EXPECT_EQ(perplexity_csv(b), perplexity_csv(extract_all(ds, heldout)));
}

TEST(Extract, CompositeMode) {
    ExtractionConfig cfg;
    cfg.readability = ReadabilityMode::Composite;
    const auto m = extract_all(three_docs(), cfg).matrix;
    EXPECT_EQ(m.columns.size(), 14u);
    const auto z = *m.column_index("readability_z");
    double sum = 0;
    for (const auto& row : m.values) sum += row[z];
    EXPECT_NEAR(sum, 0.0, 1e-9);
    EXPECT_FALSE(m.column_index("flesch_re").has_value());
}

TEST(FeatureFile, RoundTrip) {
    ExtractionConfig cfg;
    Dataset ds = three_docs();
    Document d;
    d.id = "short";
    d.text = sentences(50);
    ds.documents.push_back(d);
    const auto m = extract_all(ds, cfg).matrix;
    const auto dir = tu::scratch_dir("features_roundtrip");
    save_features(m, dir / "features.csv");
    EXPECT_TRUE(std::filesystem::exists(sidecar_path(dir / "features.csv")));
    const auto back = load_features(dir / "features.csv");
    EXPECT_EQ(back.ids, m.ids);
    EXPECT_EQ(back.columns, m.columns);
    EXPECT_EQ(back.missing, m.missing);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            if (!m.missing[i][j]) EXPECT_EQ(back.values[i][j], m.values[i][j]);
        }
    }
    EXPECT_EQ(features_csv(back), features_csv(m));
    EXPECT_EQ(back.meta, m.meta);
}

TEST(FeatureFile, MalformedFilesAreUserErrors) {
    const auto dir = tu::scratch_dir("features_bad");
    auto attempt = [&](const std::string& body) {
        std::ofstream(dir / "f.csv", std::ios::binary) << body;
        return load_features(dir / "f.csv");
    };
    EXPECT_THROW(attempt("doc,msttr\na,1\n"), UserError);
    EXPECT_THROW(attempt("id,title\na,1\n"), UserError);
    EXPECT_THROW(attempt("id,msttr,msttr\na,1,2\n"), UserError);
    EXPECT_THROW(attempt("id,msttr\na,1\na,2\n"), UserError);
    EXPECT_THROW(attempt("id,msttr\na,x\n"), UserError);
    const auto ok = attempt("id,msttr,perplexity\na,0.5,\nb,0.6,12\n");
    EXPECT_TRUE(ok.missing[0][1]);
    EXPECT_EQ(ok.values[1][1], 12.0);
    EXPECT_THROW(load_features(dir / "absent.csv"), UserError);
}
