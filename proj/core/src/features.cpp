#include "litcomplex/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"
#include "litcomplex/hash.hpp"
#include "litcomplex/parallel.hpp"
#include "litcomplex/resources.hpp"
#include "litcomplex/rng.hpp"
#include "litcomplex/syntax_style.hpp"

namespace litcomplex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kFormatVersion = 1;

std::size_t raw_index(std::string_view column) {
    for (std::size_t i = 0; i < kRawColumns.size(); ++i) {
        if (kRawColumns[i] == column) return i;
    }
    throw InvariantError("unknown raw column " + std::string(column));
}

bool is_readability_raw(std::string_view column) {
    return column == "flesch_re" || column == "fk_grade" || column == "smog" || column == "ari" ||
           column == "dale_chall";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UserError("cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw UserError("write failed: " + path.string());
}

}  // namespace

std::string_view to_string(ReadabilityMode mode) { return mode == ReadabilityMode::Raw ? "raw" : "composite"; }

ReadabilityMode parse_readability_mode(std::string_view text) {
    if (text == "raw") return ReadabilityMode::Raw;
    if (text == "composite") return ReadabilityMode::Composite;
    throw UserError("readability mode must be raw or composite, found '" + std::string(text) + "'");
}

std::string_view to_string(FeatureGroup group) {
    switch (group) {
        case FeatureGroup::Stylistic: return "Stylistic";
        case FeatureGroup::StylSyntactic: return "Styl/Syntactic";
        case FeatureGroup::Perplexity: return "Perplexity";
        case FeatureGroup::NarrativeSentiment: return "Narrative/Sentiment";
    }
    return "?";
}

FeatureGroup parse_group(std::string_view name) {
    const std::string n = to_lower(name);
    if (n == "stylistic") return FeatureGroup::Stylistic;
    if (n == "styl/syntactic" || n == "syntactic" || n == "stylistic/syntactic") return FeatureGroup::StylSyntactic;
    if (n == "perplexity") return FeatureGroup::Perplexity;
    if (n == "narrative/sentiment" || n == "narrative" || n == "sentiment") return FeatureGroup::NarrativeSentiment;
    throw UserError("unknown feature group '" + std::string(name) +
                    "' (expected Stylistic, Styl/Syntactic, Perplexity or Narrative/Sentiment)");
}

std::vector<std::string> all_columns(ReadabilityMode mode) {
    std::vector<std::string> cols;
    for (auto c : kRawColumns) {
        if (mode == ReadabilityMode::Composite && is_readability_raw(c)) {
            if (c == "flesch_re") cols.emplace_back(kReadabilityZ);
            continue;
        }
        cols.emplace_back(c);
    }
    return cols;
}

FeatureGroup group_of(std::string_view column) {
    if (column == kReadabilityZ || column == "msttr" || column == "compression_ratio" || is_readability_raw(column)) {
        return FeatureGroup::Stylistic;
    }
    if (column == "passive_ratio" || column == "nominal_ratio" || column == "of_freq" || column == "that_freq") {
        return FeatureGroup::StylSyntactic;
    }
    if (column == "perplexity") return FeatureGroup::Perplexity;
    if (column == "mean_valence" || column == "valence_sd" || column == "hurst_vader" || column == "hurst_syuzhet" ||
        column == "apen_vader" || column == "apen_syuzhet") {
        return FeatureGroup::NarrativeSentiment;
    }
    throw UserError("'" + std::string(column) + "' is not a feature column");
}

std::vector<std::string> group_columns(FeatureGroup group, ReadabilityMode mode) {
    std::vector<std::string> cols;
    for (auto& c : all_columns(mode)) {
        if (group_of(c) == group) cols.push_back(c);
    }
    return cols;
}

std::vector<std::string> group_columns(std::string_view group_name, ReadabilityMode mode) {
    return group_columns(parse_group(group_name), mode);
}

std::optional<std::size_t> FeatureMatrix::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> FeatureMatrix::row_index(std::string_view id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == id) return i;
    }
    return std::nullopt;
}

std::map<std::string, std::size_t> FeatureMatrix::missing_counts() const {
    std::map<std::string, std::size_t> counts;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        std::size_t c = 0;
        for (const auto& row : missing) c += row[j] ? 1 : 0;
        counts[columns[j]] = c;
    }
    return counts;
}

double FeatureMatrix::missing_fraction(std::size_t row) const {
    if (columns.empty()) return 0.0;
    const auto& m = missing.at(row);
    return static_cast<double>(std::count(m.begin(), m.end(), true)) / static_cast<double>(columns.size());
}

void FeatureMatrix::check_invariants() const {
    if (values.size() != ids.size() || missing.size() != ids.size()) {
        throw InvariantError("feature matrix: row count mismatch");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!seen.insert(ids[i]).second) throw InvariantError("feature matrix: duplicate id " + ids[i]);
        if (values[i].size() != columns.size() || missing[i].size() != columns.size()) {
            throw InvariantError("feature matrix: row width mismatch for " + ids[i]);
        }
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (missing[i][j] != std::isnan(values[i][j])) {
                throw InvariantError("feature matrix: mask disagrees with value for " + ids[i] + "/" + columns[j]);
            }
            if (!missing[i][j] && !std::isfinite(values[i][j])) {
                throw InvariantError("feature matrix: non-finite value for " + ids[i] + "/" + columns[j]);
            }
        }
    }
}

FeatureExtractor::FeatureExtractor(const ExtractionConfig& config) : config_(config) {
    const auto& r = config.resources;
    auto load = [&](std::string_view name, const std::filesystem::path& path) {
        std::string text = load_resource(name, path);
        digests_[std::string(name)] = hex_digest(text);
        return text;
    };
    abbreviations_ = parse_abbreviations(load(resource::abbreviations, r.abbreviations));
    participles_ = parse_word_list(load(resource::participles, r.participles));
    const std::string lexicon = load(resource::pos_lexicon, r.pos_lexicon);
    tagger_ = std::make_shared<const LexiconTagger>(lexicon, participles_);
    easy_words_ = parse_word_list(load(resource::easy_words, r.easy_words));
    vader_ = ValenceLexicon::parse(load(resource::vader_lexicon, r.vader_lexicon), LexiconStyle::Vader,
                                   "vader-style");
    syuzhet_ = ValenceLexicon::parse(load(resource::syuzhet_lexicon, r.syuzhet_lexicon), LexiconStyle::Syuzhet,
                                     "syuzhet-style");
}

FeatureExtractor::Result FeatureExtractor::extract(std::string_view text) const {
    Result out;
    const TextPipeline pipeline(abbreviations_, tagger_);
    const auto sentences = pipeline.process(text);
    out.sentences = sentences.size();
    out.lm_tokens = lm_tokens(sentences);

    auto attempt = [&](std::string_view column, const std::function<double()>& fn) {
        try {
            out.values[raw_index(column)] = fn();
        } catch (const UndefinedFeature&) {
        }
    };

    std::vector<Token> tokens;
    for (const auto& s : sentences) tokens.insert(tokens.end(), s.tokens.begin(), s.tokens.end());
    attempt("msttr", [&] { return msttr(tokens, config_.segment_size); });

    try {
        const auto rs = readability(sentences, easy_words_);
        out.values[raw_index("flesch_re")] = rs.flesch_re;
        out.values[raw_index("fk_grade")] = rs.fk_grade;
        out.values[raw_index("smog")] = rs.smog;
        out.values[raw_index("ari")] = rs.ari;
        out.values[raw_index("dale_chall")] = rs.dale_chall;
    } catch (const UndefinedFeature&) {
    }

    attempt("compression_ratio", [&] { return compression_ratio(text, sentences, config_.n_sentences); });
    attempt("passive_ratio", [&] {
        const auto p = passive_active_ratio(sentences, participles_);
        out.passive_sentinel = p.sentinel;
        return p.value;
    });
    attempt("nominal_ratio", [&] { return nominal_ratio(sentences); });
    attempt("of_freq", [&] { return function_word_freq(tokens, "of"); });
    attempt("that_freq", [&] { return function_word_freq(tokens, "that"); });

    try {
        const auto arc = build_arc("", sentences, vader_);
        out.values[raw_index("mean_valence")] = arc.mean;
        out.values[raw_index("valence_sd")] = arc.sd;
        attempt("hurst_vader", [&] { return hurst(arc.values, config_.hurst); });
        attempt("apen_vader", [&] { return approximate_entropy(arc.values, config_.apen); });
    } catch (const UndefinedFeature&) {
    }
    try {
        const auto arc = build_arc("", sentences, syuzhet_);
        attempt("hurst_syuzhet", [&] { return hurst(arc.values, config_.hurst); });
        attempt("apen_syuzhet", [&] { return approximate_entropy(arc.values, config_.apen); });
    } catch (const UndefinedFeature&) {
    }
    return out;
}

namespace {

// Builtin perplexity per document. With heldout, documents are dealt into
// folds and each fold is scored by a model trained on the other folds.
std::vector<std::optional<double>> builtin_perplexity(const std::vector<std::vector<std::string>>& docs,
                                                      const ExtractionConfig& config) {
    const std::size_t n = docs.size();
    std::vector<std::optional<double>> out(n);
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < n; ++i) {
        if (!docs[i].empty()) usable.push_back(i);
    }
    if (usable.empty()) return out;

    auto score = [&](const NGramModel& model, std::span<const std::size_t> which) {
        parallel_for(which.size(), config.threads, [&](std::size_t k) {
            try {
                out[which[k]] = perplexity(model, std::span<const std::string>(docs[which[k]]), config.window);
            } catch (const UndefinedFeature&) {
            }
        });
    };

    if (!config.ngram_heldout) {
        const auto model = train_ngram(docs, config.ngram);
        score(model, usable);
        return out;
    }
    if (usable.size() < 2) throw UserError("--ngram-heldout needs at least two documents with tokens");
    const std::size_t folds = std::clamp<std::size_t>(config.heldout_folds, 2, usable.size());
    Rng rng(config.seed, 0x6e6772616dULL);
    std::vector<std::size_t> order = usable;
    rng.shuffle(order);
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<std::vector<std::string>> train;
        std::vector<std::size_t> held;
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (k % folds == f) {
                held.push_back(order[k]);
            } else {
                train.push_back(docs[order[k]]);
            }
        }
        std::sort(held.begin(), held.end());
        const auto model = train_ngram(train, config.ngram);
        score(model, held);
    }
    return out;
}

nlohmann::json config_json(const ExtractionConfig& c) {
    nlohmann::json j;
    j["segment_size"] = c.segment_size;
    j["n_sentences"] = c.n_sentences;
    j["readability"] = to_string(c.readability);
    j["hurst"] = {{"method", c.hurst.method == HurstMethod::Dfa ? "dfa" : "rs"},
                  {"min_length", c.hurst.min_length},
                  {"n_scales", c.hurst.n_scales},
                  {"min_scale", c.hurst.min_scale},
                  {"max_scale_divisor", c.hurst.max_scale_divisor}};
    j["apen"] = {{"m", c.apen.m}, {"r_factor", c.apen.r_factor}};
    j["ngram"] = {{"order", c.ngram.order},
                  {"k", c.ngram.k},
                  {"min_count", c.ngram.min_count},
                  {"window", c.window.window},
                  {"stride", c.window.stride},
                  {"heldout", c.ngram_heldout},
                  {"heldout_folds", c.heldout_folds}};
    j["perplexity_fallback"] = c.perplexity_fallback_builtin ? "builtin" : "none";
    j["seed"] = c.seed;
    return j;
}

}  // namespace

Extraction extract_all(const Dataset& dataset, const ExtractionConfig& config,
                       std::span<const ExternalPerplexity> external) {
    const FeatureExtractor extractor(config);
    const std::size_t n = dataset.documents.size();
    std::vector<FeatureExtractor::Result> results(n);
    parallel_for(n, config.threads, [&](std::size_t i) { results[i] = extractor.extract(dataset.documents[i].text); });

    std::vector<std::vector<std::string>> lm_docs(n);
    for (std::size_t i = 0; i < n; ++i) lm_docs[i] = std::move(results[i].lm_tokens);

    Extraction ex;
    for (const auto& e : external) ex.external_names.push_back(e.name);
    const bool need_builtin = external.empty() || config.perplexity_fallback_builtin;
    std::vector<std::optional<double>> builtin(n);
    if (need_builtin) builtin = builtin_perplexity(lm_docs, config);

    std::size_t n_builtin = 0, n_external = 0;
    for (std::size_t i = 0; i < n; ++i) {
        PerplexityRow row;
        row.doc_id = dataset.documents[i].id;
        row.builtin = builtin[i];
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& e : external) {
            auto it = e.scores.find(row.doc_id);
            if (it == e.scores.end()) {
                row.external.emplace_back();
            } else {
                row.external.emplace_back(it->second);
                sum += it->second;
                ++count;
            }
        }
        if (count > 0) {
            row.value = sum / static_cast<double>(count);
            row.source = PerplexitySource::External;
            ++n_external;
        } else if (row.builtin) {
            row.value = row.builtin;
            row.source = PerplexitySource::Builtin;
            ++n_builtin;
        }
        results[i].values[raw_index("perplexity")] = row.value;
        ex.perplexity.push_back(std::move(row));
    }

    FeatureMatrix& m = ex.matrix;
    m.mode = config.readability;
    m.columns = all_columns(config.readability);
    std::vector<std::optional<double>> composite(n);
    if (config.readability == ReadabilityMode::Composite) {
        std::vector<ReadabilityScores> scores;
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& v = results[i].values;
            if (!v[raw_index("flesch_re")]) continue;
            scores.push_back({*v[raw_index("flesch_re")], *v[raw_index("fk_grade")], *v[raw_index("smog")],
                              *v[raw_index("ari")], *v[raw_index("dale_chall")]});
            rows.push_back(i);
        }
        const auto z = readability_composite(scores);
        for (std::size_t k = 0; k < rows.size(); ++k) composite[rows[k]] = z[k];
    }

    std::size_t extractable = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> values;
        std::vector<bool> mask;
        bool any = false;
        for (const auto& c : m.columns) {
            const std::optional<double> v =
                c == kReadabilityZ ? composite[i] : results[i].values[raw_index(c)];
            values.push_back(v ? *v : kNaN);
            mask.push_back(!v);
            any = any || v.has_value();
        }
        if (any) ++extractable;
        if (results[i].passive_sentinel) ex.sentinel_ids.push_back(dataset.documents[i].id);
        m.ids.push_back(dataset.documents[i].id);
        m.values.push_back(std::move(values));
        m.missing.push_back(std::move(mask));
    }
    if (extractable == 0) throw UserError("no document yielded any feature");
    m.check_invariants();

    nlohmann::json meta;
    meta["format_version"] = kFormatVersion;
    meta["readability_mode"] = to_string(config.readability);
    meta["columns"] = m.columns;
    nlohmann::json groups = nlohmann::json::object();
    for (auto g : kAllGroups) groups[std::string(to_string(g))] = group_columns(g, config.readability);
    meta["groups"] = groups;
    meta["config"] = config_json(config);
    meta["resources"] = extractor.resource_digests();
    meta["compressor"] = {{"format", "bzip2"},
                          {"block_size_100k", kBzip2BlockSize},
                          {"joiner", "\n"},
                          {"n_sentences", config.n_sentences}};
    std::string source = "none";
    if (n_external > 0 && n_builtin > 0) {
        source = "mixed";
    } else if (n_external > 0) {
        source = "external";
    } else if (n_builtin > 0) {
        source = "builtin";
    }
    meta["perplexity"] = {{"source", source},
                          {"external_files", ex.external_names},
                          {"documents_builtin", n_builtin},
                          {"documents_external", n_external}};
    meta["passive_sentinel"] = {{"value", kPassiveSentinel}, {"doc_ids", ex.sentinel_ids}};
    meta["missing_counts"] = m.missing_counts();
    meta["documents"] = n;
    m.meta = std::move(meta);
    return ex;
}

std::string features_csv(const FeatureMatrix& matrix) {
    std::string out = "id";
    for (const auto& c : matrix.columns) out += "," + c;
    out += "\n";
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        out += csv::escape(matrix.ids[i]);
        for (std::size_t j = 0; j < matrix.columns.size(); ++j) {
            out += ",";
            if (!matrix.missing[i][j]) out += csv::format_double(matrix.values[i][j]);
        }
        out += "\n";
    }
    return out;
}

std::string perplexity_csv(const Extraction& ex) {
    csv::Row header = {"id", "builtin"};
    for (const auto& name : ex.external_names) header.push_back("external:" + name);
    header.push_back("perplexity");
    header.push_back("perplexity_source");
    std::string out = csv::join(header) + "\n";
    for (const auto& r : ex.perplexity) {
        csv::Row row = {r.doc_id, r.builtin ? csv::format_double(*r.builtin) : ""};
        for (const auto& e : r.external) row.push_back(e ? csv::format_double(*e) : "");
        row.push_back(r.value ? csv::format_double(*r.value) : "");
        row.push_back(r.source ? std::string(to_string(*r.source)) : "");
        out += csv::join(row) + "\n";
    }
    return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& features_path) {
    auto p = features_path;
    p.replace_extension(".meta.json");
    return p;
}

void save_features(const FeatureMatrix& matrix, const std::filesystem::path& path) {
    matrix.check_invariants();
    write_file(path, features_csv(matrix));
    write_file(sidecar_path(path), matrix.meta.dump(2) + "\n");
}

FeatureMatrix load_features(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path)) throw UserError("feature file not found: " + path.string());
    const csv::Table table = csv::read(path);
    const std::string source = path.string();
    if (table.header.empty() || table.header[0] != "id") throw UserError(source + ": first column must be 'id'");

    FeatureMatrix m;
    m.columns.assign(table.header.begin() + 1, table.header.end());
    std::set<std::string> seen;
    for (const auto& c : m.columns) {
        group_of(c);
        if (!seen.insert(c).second) throw UserError(source + ": duplicate column " + c);
    }
    if (seen.contains(std::string(kReadabilityZ))) {
        m.mode = ReadabilityMode::Composite;
    }
    seen.clear();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string where = source + ": row at line " + std::to_string(table.line_numbers[r]) + ": ";
        if (row[0].empty()) throw UserError(where + "empty id");
        if (!seen.insert(row[0]).second) throw UserError(where + "duplicate id '" + row[0] + "'");
        std::vector<double> values;
        std::vector<bool> mask;
        for (std::size_t j = 1; j < row.size(); ++j) {
            if (row[j].empty()) {
                values.push_back(kNaN);
                mask.push_back(true);
                continue;
            }
            auto v = csv::parse_double(row[j]);
            if (!v) throw UserError(where + "column " + table.header[j] + ": not a finite number '" + row[j] + "'");
            values.push_back(*v);
            mask.push_back(false);
        }
        m.ids.push_back(row[0]);
        m.values.push_back(std::move(values));
        m.missing.push_back(std::move(mask));
    }
    const auto side = sidecar_path(path);
    if (std::filesystem::is_regular_file(side)) {
        try {
            m.meta = nlohmann::json::parse(read_file(side));
        } catch (const nlohmann::json::exception& e) {
            throw UserError(side.string() + ": " + e.what());
        }
        if (m.meta.contains("readability_mode")) {
            m.mode = parse_readability_mode(m.meta["readability_mode"].get<std::string>());
        }
    }
    m.check_invariants();
    return m;
}

}  // namespace litcomplex
