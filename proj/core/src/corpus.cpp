#include "litcomplex/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"

namespace litcomplex {

namespace {

constexpr std::array<const char*, 9> kColumns = {"id",  "title", "author",     "year",      "canon",
                                                 "nobel", "prize", "bestseller", "avg_rating"};

bool parse_flag(const std::string& cell, const std::string& column, std::size_t line, const std::string& source) {
    if (cell == "0") return false;
    if (cell == "1") return true;
    throw UserError(source + ": row at line " + std::to_string(line) + ": column " + column +
                    " must be 0 or 1, found '" + cell + "'");
}

}  // namespace

const Document* Dataset::find(const std::string& id) const {
    for (const auto& d : documents) {
        if (d.id == id) return &d;
    }
    return nullptr;
}

void Dataset::check_invariants() const {
    std::set<std::string> ids;
    for (const auto& d : documents) {
        if (!ids.insert(d.id).second) throw InvariantError("duplicate document id " + d.id);
    }
    for (const auto& [id, _] : labels) {
        if (!ids.contains(id)) throw InvariantError("label without document: " + id);
    }
    for (const auto& [id, _] : external_scores) {
        if (!ids.contains(id)) throw InvariantError("external score without document: " + id);
    }
}

Dataset load_metadata(const std::filesystem::path& metadata) {
    const std::string source = metadata.string();
    if (!std::filesystem::is_regular_file(metadata)) throw UserError("cannot read metadata file " + source);
    const csv::Table table = csv::read(metadata);
    if (table.header.size() != kColumns.size() || !std::equal(kColumns.begin(), kColumns.end(), table.header.begin())) {
        throw UserError(source + ": header must be exactly '" + std::string(kMetadataHeader) + "'");
    }

    Dataset ds;
    std::set<std::string> seen;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line = table.line_numbers[r];
        auto fail = [&](const std::string& what) {
            throw UserError(source + ": row at line " + std::to_string(line) + ": " + what);
        };
        Document doc;
        doc.id = row[0];
        if (doc.id.empty()) fail("empty id");
        if (doc.id.find_first_of("/\\") != std::string::npos) fail("id may not contain path separators");
        if (!seen.insert(doc.id).second) fail("duplicate id '" + doc.id + "'");
        doc.title = row[1];
        doc.author = row[2];
        if (!row[3].empty()) {
            auto year = csv::parse_int(row[3]);
            if (!year) fail("year must be an integer, found '" + row[3] + "'");
            doc.year = static_cast<int>(*year);
        }
        QualityLabels labels;
        labels.canon = parse_flag(row[4], "canon", line, source);
        labels.nobel = parse_flag(row[5], "nobel", line, source);
        labels.prize = parse_flag(row[6], "prize", line, source);
        labels.bestseller = parse_flag(row[7], "bestseller", line, source);
        if (!row[8].empty()) {
            auto rating = csv::parse_double(row[8]);
            if (!rating || *rating < 1.0 || *rating > 5.0) {
                fail("avg_rating must be empty or a number in [1, 5], found '" + row[8] + "'");
            }
            labels.avg_rating = *rating;
        }
        ds.labels.emplace(doc.id, labels);
        ds.documents.push_back(std::move(doc));
    }
    ds.check_invariants();
    return ds;
}

CorpusLoad load_corpus(const std::filesystem::path& text_dir, const std::filesystem::path& metadata) {
    Dataset all = load_metadata(metadata);
    if (!std::filesystem::is_directory(text_dir)) throw UserError("corpus directory not found: " + text_dir.string());

    CorpusLoad out;
    for (auto& doc : all.documents) {
        const auto path = text_dir / (doc.id + ".txt");
        std::ifstream in(path, std::ios::binary);
        std::string text;
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        if (text.find_first_not_of(" \t\r\n\f\v") == std::string::npos) {
            out.missing.push_back(doc.id);
            continue;
        }
        doc.text = std::move(text);
        out.dataset.labels.emplace(doc.id, all.labels.at(doc.id));
        out.dataset.documents.push_back(std::move(doc));
    }
    out.dataset.check_invariants();
    return out;
}

TextPipeline::TextPipeline(AbbreviationSet abbreviations, std::shared_ptr<const Tagger> tagger)
    : abbreviations_(std::move(abbreviations)), tagger_(std::move(tagger)) {}

TextPipeline TextPipeline::bundled() { return TextPipeline(default_abbreviations(), LexiconTagger::bundled()); }

std::vector<Sentence> TextPipeline::process(std::string_view text) const {
    auto sentences = segment_sentences(text, abbreviations_);
    for (auto& s : sentences) {
        s.tokens = tokenize(text.substr(s.span.begin, s.span.end - s.span.begin));
        tagger_->tag(s.tokens);
    }
    return sentences;
}

}  // namespace litcomplex
