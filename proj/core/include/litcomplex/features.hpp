#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "litcomplex/arc_complexity.hpp"
#include "litcomplex/corpus.hpp"
#include "litcomplex/lm.hpp"
#include "litcomplex/sentiment.hpp"
#include "litcomplex/stylometry.hpp"

namespace litcomplex {

// Raw feature columns, in file order.
inline constexpr std::array<std::string_view, 18> kRawColumns = {
    "msttr",         "flesch_re",     "fk_grade",    "smog",         "ari",           "dale_chall",
    "compression_ratio", "passive_ratio", "nominal_ratio", "of_freq",   "that_freq",     "perplexity",
    "mean_valence",  "valence_sd",    "hurst_vader", "hurst_syuzhet", "apen_vader",   "apen_syuzhet"};

inline constexpr std::string_view kReadabilityZ = "readability_z";

enum class ReadabilityMode { Raw, Composite };
std::string_view to_string(ReadabilityMode mode);
ReadabilityMode parse_readability_mode(std::string_view text);

enum class FeatureGroup { Stylistic, StylSyntactic, Perplexity, NarrativeSentiment };
inline constexpr std::array<FeatureGroup, 4> kAllGroups = {FeatureGroup::Stylistic, FeatureGroup::StylSyntactic,
                                                           FeatureGroup::Perplexity,
                                                           FeatureGroup::NarrativeSentiment};
std::string_view to_string(FeatureGroup group);
// Accepts the display names ("Styl/Syntactic", ...) and short forms
// (stylistic, syntactic, perplexity, narrative). Throws UserError otherwise.
FeatureGroup parse_group(std::string_view name);

std::vector<std::string> all_columns(ReadabilityMode mode = ReadabilityMode::Raw);
// Throws UserError for a column that is not a feature.
FeatureGroup group_of(std::string_view column);
std::vector<std::string> group_columns(FeatureGroup group, ReadabilityMode mode = ReadabilityMode::Raw);
std::vector<std::string> group_columns(std::string_view group_name, ReadabilityMode mode = ReadabilityMode::Raw);

struct FeatureMatrix {
    ReadabilityMode mode = ReadabilityMode::Raw;
    std::vector<std::string> columns;
    std::vector<std::string> ids;
    std::vector<std::vector<double>> values;  // NaN where missing
    std::vector<std::vector<bool>> missing;
    nlohmann::json meta = nlohmann::json::object();

    std::size_t rows() const { return ids.size(); }
    std::optional<std::size_t> column_index(std::string_view name) const;
    std::optional<std::size_t> row_index(std::string_view id) const;
    std::map<std::string, std::size_t> missing_counts() const;
    double missing_fraction(std::size_t row) const;
    // Throws InvariantError on shape or mask/value disagreement.
    void check_invariants() const;
};

struct ResourcePaths {
    std::filesystem::path abbreviations;
    std::filesystem::path pos_lexicon;
    std::filesystem::path participles;
    std::filesystem::path easy_words;
    std::filesystem::path vader_lexicon;
    std::filesystem::path syuzhet_lexicon;
};

struct ExtractionConfig {
    std::size_t segment_size = 100;
    std::size_t n_sentences = 1500;
    ReadabilityMode readability = ReadabilityMode::Raw;
    HurstConfig hurst;
    ApEnConfig apen;
    NGramConfig ngram;
    WindowConfig window;
    bool ngram_heldout = false;  // cross-fitted models instead of one corpus model
    std::size_t heldout_folds = 5;
    bool perplexity_fallback_builtin = false;  // fill gaps in external scores
    std::uint64_t seed = 0;
    unsigned threads = 0;
    ResourcePaths resources;
};

// Resources loaded once and shared read-only by all workers.
class FeatureExtractor {
public:
    explicit FeatureExtractor(const ExtractionConfig& config);

    struct Result {
        std::array<std::optional<double>, kRawColumns.size()> values;  // perplexity left empty
        bool passive_sentinel = false;
        std::size_t sentences = 0;
        std::vector<std::string> lm_tokens;
    };

    Result extract(std::string_view text) const;

    // FNV-1a digests of the resource texts in use, keyed by resource name.
    const std::map<std::string, std::string>& resource_digests() const { return digests_; }

private:
    ExtractionConfig config_;
    AbbreviationSet abbreviations_;
    std::shared_ptr<const LexiconTagger> tagger_;
    WordSet participles_;
    WordSet easy_words_;
    ValenceLexicon vader_;
    ValenceLexicon syuzhet_;
    std::map<std::string, std::string> digests_;
};

struct ExternalPerplexity {
    std::string name;  // usually the file name
    std::map<std::string, double> scores;
};

struct PerplexityRow {
    std::string doc_id;
    std::optional<double> builtin;
    std::vector<std::optional<double>> external;  // one per source
    std::optional<double> value;
    std::optional<PerplexitySource> source;
};

struct Extraction {
    FeatureMatrix matrix;
    std::vector<PerplexityRow> perplexity;
    std::vector<std::string> external_names;
    std::vector<std::string> sentinel_ids;  // documents whose passive ratio is the sentinel
};

// One row per document in dataset order. Undefined features become missing
// cells. Throws UserError when no document yields any feature.
Extraction extract_all(const Dataset& dataset, const ExtractionConfig& config,
                       std::span<const ExternalPerplexity> external = {});

// CSV: id then feature columns, missing as an empty cell.
std::string features_csv(const FeatureMatrix& matrix);
std::string perplexity_csv(const Extraction& extraction);

// Writes <path> and the sidecar (<stem>.meta.json next to it).
void save_features(const FeatureMatrix& matrix, const std::filesystem::path& path);
// Reads the sidecar when present. Throws UserError on malformed files.
FeatureMatrix load_features(const std::filesystem::path& path);
std::filesystem::path sidecar_path(const std::filesystem::path& features_path);

}  // namespace litcomplex
