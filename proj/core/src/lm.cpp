#include "litcomplex/lm.hpp"

#include <algorithm>
#include <cmath>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"

namespace litcomplex {

std::vector<TokenId> UniformModel::encode(std::span<const std::string> tokens) const {
    return std::vector<TokenId>(tokens.size(), 0);
}

double UniformModel::log_prob(std::span<const TokenId>, std::size_t, std::size_t) const {
    return -std::log(static_cast<double>(v_));
}

std::string NGramModel::key(std::span<const TokenId> context) {
    return std::string(reinterpret_cast<const char*>(context.data()), context.size() * sizeof(TokenId));
}

std::optional<TokenId> NGramModel::id_of(const std::string& word) const {
    auto it = vocabulary_.find(word);
    if (it == vocabulary_.end()) return std::nullopt;
    return it->second;
}

std::vector<TokenId> NGramModel::encode(std::span<const std::string> tokens) const {
    std::vector<TokenId> ids;
    ids.reserve(tokens.size());
    for (const auto& t : tokens) {
        auto it = vocabulary_.find(t);
        ids.push_back(it == vocabulary_.end() ? kUnk : it->second);
    }
    return ids;
}

double NGramModel::probability(std::span<const TokenId> context, TokenId token) const {
    const std::size_t h = config_.order - 1;
    std::vector<TokenId> full(h, bos());
    const std::size_t take = std::min(h, context.size());
    std::copy(context.end() - static_cast<std::ptrdiff_t>(take), context.end(), full.end() - static_cast<std::ptrdiff_t>(take));

    const double v = static_cast<double>(event_count());
    const double kv = config_.k * v;
    double p = 1.0 / v;
    for (std::size_t j = 0; j <= h; ++j) {
        const auto& table = tables_[j];
        auto it = table.find(key(std::span<const TokenId>(full).last(j)));
        if (it == table.end()) continue;
        const auto& counts = it->second;
        auto c = counts.next.find(token);
        const double hits = c == counts.next.end() ? 0.0 : static_cast<double>(c->second);
        p = (hits + kv * p) / (static_cast<double>(counts.total) + kv);
    }
    return p;
}

double NGramModel::log_prob(std::span<const TokenId> seq, std::size_t begin, std::size_t i) const {
    const std::size_t h = config_.order - 1;
    const std::size_t from = i - std::min(h, i - begin);
    return std::log(probability(seq.subspan(from, i - from), seq[i]));
}

NGramModel train_ngram(std::span<const std::vector<std::string>> documents, const NGramConfig& config) {
    if (config.order < 1) throw UserError("ngram order must be at least 1");
    if (!(config.k > 0) || !std::isfinite(config.k)) throw UserError("ngram k must be positive");
    std::unordered_map<std::string, std::size_t> freq;
    std::size_t total = 0;
    for (const auto& doc : documents) {
        for (const auto& t : doc) ++freq[t];
        total += doc.size();
    }
    if (total == 0) throw UserError("ngram training input is empty");

    NGramModel model;
    model.config_ = config;
    std::vector<std::string> kept;
    for (const auto& [w, c] : freq) {
        if (c >= config.min_count) kept.push_back(w);
    }
    // Sorted ids keep the model independent of hash iteration order.
    std::sort(kept.begin(), kept.end());
    for (std::size_t i = 0; i < kept.size(); ++i) model.vocabulary_.emplace(kept[i], static_cast<TokenId>(i + 1));

    const std::size_t h = config.order - 1;
    model.tables_.resize(config.order);
    for (const auto& doc : documents) {
        std::vector<TokenId> seq(h, model.bos());
        const auto ids = model.encode(doc);
        seq.insert(seq.end(), ids.begin(), ids.end());
        for (std::size_t i = h; i < seq.size(); ++i) {
            for (std::size_t j = 0; j <= h; ++j) {
                auto& counts = model.tables_[j][NGramModel::key(std::span<const TokenId>(seq).subspan(i - j, j))];
                ++counts.total;
                ++counts.next[seq[i]];
            }
        }
    }
    return model;
}

std::vector<std::string> lm_tokens(std::span<const Sentence> sentences) {
    std::vector<std::string> out;
    for (const auto& s : sentences) {
        for (const auto& t : s.tokens) {
            if (t.kind == TokenKind::Punct) continue;
            out.push_back(fold_apostrophes(t.normalized));
        }
    }
    return out;
}

double perplexity(const LanguageModel& model, std::span<const TokenId> seq, const WindowConfig& config) {
    if (config.window == 0 || config.stride == 0 || config.stride > config.window) {
        throw UserError("perplexity: need 0 < stride <= window");
    }
    const std::size_t n = seq.size();
    if (n == 0) throw UndefinedFeature("perplexity: empty document");

    auto window_ppl = [&](std::size_t begin, std::size_t score_from, std::size_t end) {
        double nll = 0.0;
        for (std::size_t i = score_from; i < end; ++i) nll -= model.log_prob(seq, begin, i);
        return std::exp(nll / static_cast<double>(end - score_from));
    };

    double sum = window_ppl(0, 0, std::min(config.window, n));
    std::size_t windows = 1;
    for (std::size_t begin = config.stride;; begin += config.stride) {
        const std::size_t score_from = begin + config.window - config.stride;
        if (score_from >= n) break;
        sum += window_ppl(begin, score_from, std::min(begin + config.window, n));
        ++windows;
    }
    return sum / static_cast<double>(windows);
}

double perplexity(const LanguageModel& model, std::span<const std::string> tokens, const WindowConfig& config) {
    const auto ids = model.encode(tokens);
    return perplexity(model, std::span<const TokenId>(ids), config);
}

std::string_view to_string(PerplexitySource source) {
    return source == PerplexitySource::External ? "external" : "builtin";
}

std::map<std::string, double> load_external_scores(const std::filesystem::path& path,
                                                   const std::set<std::string>* known_ids) {
    const std::string source = path.string();
    if (!std::filesystem::is_regular_file(path)) throw UserError("cannot read external perplexity file " + source);
    const csv::Table table = csv::read(path);
    if (table.header != std::vector<std::string>{"id", "perplexity"}) {
        throw UserError(source + ": header must be exactly 'id,perplexity'");
    }
    std::map<std::string, double> scores;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string where = source + ": row at line " + std::to_string(table.line_numbers[r]) + ": ";
        if (known_ids && !known_ids->contains(row[0])) throw UserError(where + "unknown id '" + row[0] + "'");
        auto v = csv::parse_double(row[1]);
        if (!v || *v <= 0) throw UserError(where + "perplexity must be a finite positive number, found '" + row[1] + "'");
        if (!scores.emplace(row[0], *v).second) throw UserError(where + "duplicate id '" + row[0] + "'");
    }
    return scores;
}

}  // namespace litcomplex
