#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "litcomplex/tagger.hpp"
#include "litcomplex/text.hpp"

namespace litcomplex {

struct QualityLabels {
    bool canon = false;
    bool nobel = false;
    bool prize = false;
    bool bestseller = false;
    std::optional<double> avg_rating;  // [1, 5] when present

    bool any_category() const { return canon || nobel || prize || bestseller; }
};

struct Document {
    std::string id;
    std::string title;
    std::string author;
    int year = 0;
    std::string text;
};

struct Dataset {
    std::vector<Document> documents;
    std::map<std::string, QualityLabels> labels;
    std::map<std::string, double> external_scores;

    const Document* find(const std::string& id) const;
    // Throws InvariantError if a label or score key has no document.
    void check_invariants() const;
};

inline constexpr const char* kMetadataHeader =
    "id,title,author,year,canon,nobel,prize,bestseller,avg_rating";

// Metadata only; every document has empty text.
Dataset load_metadata(const std::filesystem::path& metadata);

struct CorpusLoad {
    Dataset dataset;
    std::vector<std::string> missing;  // metadata ids with no readable <id>.txt
};

// One document per metadata row whose <text_dir>/<id>.txt exists and is
// non-empty. Fatal (UserError) for unreadable metadata, duplicate ids and
// malformed cells; missing texts are returned in `missing`.
CorpusLoad load_corpus(const std::filesystem::path& text_dir, const std::filesystem::path& metadata);

// Segmentation + tokenization + tagging of one text.
class TextPipeline {
public:
    TextPipeline(AbbreviationSet abbreviations, std::shared_ptr<const Tagger> tagger);

    static TextPipeline bundled();

    std::vector<Sentence> process(std::string_view text) const;

private:
    AbbreviationSet abbreviations_;
    std::shared_ptr<const Tagger> tagger_;
};

}  // namespace litcomplex
