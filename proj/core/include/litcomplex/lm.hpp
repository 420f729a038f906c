#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "litcomplex/text.hpp"

namespace litcomplex {

using TokenId = std::uint32_t;

// A conditional word model scored over integer-encoded sequences.
class LanguageModel {
public:
    virtual ~LanguageModel() = default;

    virtual std::vector<TokenId> encode(std::span<const std::string> tokens) const = 0;

    // ln P(seq[i] | seq[begin..i)); the model sees no token before `begin`.
    virtual double log_prob(std::span<const TokenId> seq, std::size_t begin, std::size_t i) const = 0;

    // Size of the predicted event space (vocabulary + UNK).
    virtual std::size_t event_count() const = 0;
};

// P(w) = 1 / V for every token.
class UniformModel final : public LanguageModel {
public:
    explicit UniformModel(std::size_t vocabulary) : v_(vocabulary) {}
    std::vector<TokenId> encode(std::span<const std::string> tokens) const override;
    double log_prob(std::span<const TokenId> seq, std::size_t begin, std::size_t i) const override;
    std::size_t event_count() const override { return v_; }

private:
    std::size_t v_;
};

struct NGramConfig {
    std::size_t order = 3;
    double k = 0.1;
    std::size_t min_count = 2;  // rarer training tokens become UNK
};

// Word n-gram model with interpolated add-k smoothing: each order's counts
// are smoothed toward the next lower order, and the lowest order toward the
// uniform distribution over vocabulary + UNK. Contexts shorter than the order
// at a sequence start are padded with a begin marker.
class NGramModel final : public LanguageModel {
public:
    static constexpr TokenId kUnk = 0;

    std::vector<TokenId> encode(std::span<const std::string> tokens) const override;
    double log_prob(std::span<const TokenId> seq, std::size_t begin, std::size_t i) const override;
    std::size_t event_count() const override { return vocabulary_.size() + 1; }

    // P(token | context); context holds up to order - 1 ids, most recent
    // last, shorter contexts are padded with the begin marker.
    double probability(std::span<const TokenId> context, TokenId token) const;

    const NGramConfig& config() const { return config_; }
    std::size_t vocabulary_size() const { return vocabulary_.size(); }
    std::optional<TokenId> id_of(const std::string& word) const;

private:
    friend NGramModel train_ngram(std::span<const std::vector<std::string>>, const NGramConfig&);

    struct Counts {
        std::uint64_t total = 0;
        std::unordered_map<TokenId, std::uint64_t> next;
    };

    TokenId bos() const { return static_cast<TokenId>(vocabulary_.size() + 1); }
    static std::string key(std::span<const TokenId> context);

    NGramConfig config_;
    std::unordered_map<std::string, TokenId> vocabulary_;
    // tables_[j] maps a context of length j to its continuation counts.
    std::vector<std::unordered_map<std::string, Counts>> tables_;
};

// Throws UserError for empty training input.
NGramModel train_ngram(std::span<const std::vector<std::string>> documents, const NGramConfig& config = {});

// Word and number tokens, lowercased with folded apostrophes.
std::vector<std::string> lm_tokens(std::span<const Sentence> sentences);

struct WindowConfig {
    std::size_t window = 512;
    std::size_t stride = 256;
};

// Mean over sliding windows of exp(mean negative log-probability). The first
// window scores all its tokens; later windows score only the tokens after
// their first window - stride positions. Throws UndefinedFeature when empty.
double perplexity(const LanguageModel& model, std::span<const TokenId> sequence, const WindowConfig& config = {});
double perplexity(const LanguageModel& model, std::span<const std::string> tokens, const WindowConfig& config = {});

enum class PerplexitySource { Builtin, External };
std::string_view to_string(PerplexitySource source);

struct PerplexityRecord {
    std::string doc_id;
    double value = 0;
    PerplexitySource source = PerplexitySource::Builtin;
};

// CSV with header id,perplexity. Values must be finite and positive; when
// `known_ids` is given, unknown ids are rejected. Errors name the line.
std::map<std::string, double> load_external_scores(const std::filesystem::path& path,
                                                   const std::set<std::string>* known_ids = nullptr);

}  // namespace litcomplex
