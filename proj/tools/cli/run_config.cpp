#include "run_config.hpp"

#include <fstream>
#include <functional>

#include "litcomplex/csv.hpp"
#include "litcomplex/error.hpp"

namespace litcx {

using litcomplex::UserError;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string_view::npos) comma = s.size();
        auto item = trim(s.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(std::move(item));
        pos = comma + 1;
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
    throw UserError("config " + std::string(key) + ": expected " + std::string(expected) + ", found '" +
                    std::string(value) + "'");
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
    auto n = litcomplex::csv::parse_int(v);
    if (!n || *n < 0) bad(key, v, "a non-negative integer");
    return static_cast<std::uint64_t>(*n);
}

double to_double(std::string_view key, std::string_view v) {
    auto d = litcomplex::csv::parse_double(v);
    if (!d) bad(key, v, "a number");
    return *d;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    bad(key, v, "true or false");
}

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(double v) { return litcomplex::csv::format_double(v); }
std::string str(bool v) { return v ? "true" : "false"; }

struct Key {
    std::string_view name;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

#define LITCX_UINT(NAME, FIELD)                                                           \
    Key {                                                                                 \
        NAME, [](RunConfig& c, std::string_view v) { c.FIELD = to_uint(NAME, v); },       \
            [](const RunConfig& c) { return str(static_cast<std::uint64_t>(c.FIELD)); } \
    }
#define LITCX_DOUBLE(NAME, FIELD)                                                      \
    Key {                                                                              \
        NAME, [](RunConfig& c, std::string_view v) { c.FIELD = to_double(NAME, v); }, \
            [](const RunConfig& c) { return str(c.FIELD); }                            \
    }
#define LITCX_BOOL(NAME, FIELD)                                                      \
    Key {                                                                            \
        NAME, [](RunConfig& c, std::string_view v) { c.FIELD = to_bool(NAME, v); }, \
            [](const RunConfig& c) { return str(c.FIELD); }                          \
    }
#define LITCX_PATH(NAME, FIELD)                                                              \
    Key {                                                                                    \
        NAME, [](RunConfig& c, std::string_view v) { c.FIELD = std::string(v); },           \
            [](const RunConfig& c) { return c.FIELD.string(); }                              \
    }

const std::vector<Key>& keys() {
    static const std::vector<Key> table = {
        LITCX_PATH("corpus", corpus),
        LITCX_PATH("metadata", metadata),
        LITCX_PATH("features", features),
        LITCX_PATH("out", out),
        LITCX_UINT("seed", seed),
        LITCX_UINT("threads", threads),
        Key{"tasks", [](RunConfig& c, std::string_view v) { c.tasks = split_list(v); },
            [](const RunConfig& c) { return join_list(c.tasks); }},
        Key{"external_perplexity",
            [](RunConfig& c, std::string_view v) {
                c.external_perplexity.clear();
                for (auto& p : split_list(v)) c.external_perplexity.emplace_back(p);
            },
            [](const RunConfig& c) {
                std::vector<std::string> s;
                for (const auto& p : c.external_perplexity) s.push_back(p.string());
                return join_list(s);
            }},
        // extraction
        LITCX_UINT("segment_size", extraction.segment_size),
        LITCX_UINT("n_sentences", extraction.n_sentences),
        Key{"readability",
            [](RunConfig& c, std::string_view v) { c.extraction.readability = litcomplex::parse_readability_mode(v); },
            [](const RunConfig& c) { return std::string(litcomplex::to_string(c.extraction.readability)); }},
        Key{"hurst_method",
            [](RunConfig& c, std::string_view v) {
                if (v == "dfa") {
                    c.extraction.hurst.method = litcomplex::HurstMethod::Dfa;
                } else if (v == "rs") {
                    c.extraction.hurst.method = litcomplex::HurstMethod::RescaledRange;
                } else {
                    bad("hurst_method", v, "dfa or rs");
                }
            },
            [](const RunConfig& c) {
                return std::string(c.extraction.hurst.method == litcomplex::HurstMethod::Dfa ? "dfa" : "rs");
            }},
        LITCX_UINT("hurst_min_length", extraction.hurst.min_length),
        LITCX_UINT("hurst_scales", extraction.hurst.n_scales),
        LITCX_UINT("hurst_min_scale", extraction.hurst.min_scale),
        LITCX_UINT("hurst_max_scale_divisor", extraction.hurst.max_scale_divisor),
        LITCX_UINT("apen_m", extraction.apen.m),
        LITCX_DOUBLE("apen_r_factor", extraction.apen.r_factor),
        LITCX_UINT("ngram_n", extraction.ngram.order),
        LITCX_DOUBLE("ngram_k", extraction.ngram.k),
        LITCX_UINT("ngram_min_count", extraction.ngram.min_count),
        LITCX_UINT("window", extraction.window.window),
        LITCX_UINT("stride", extraction.window.stride),
        LITCX_BOOL("ngram_heldout", extraction.ngram_heldout),
        LITCX_UINT("ngram_folds", extraction.heldout_folds),
        Key{"perplexity_fallback",
            [](RunConfig& c, std::string_view v) {
                if (v == "builtin") {
                    c.extraction.perplexity_fallback_builtin = true;
                } else if (v == "none") {
                    c.extraction.perplexity_fallback_builtin = false;
                } else {
                    bad("perplexity_fallback", v, "none or builtin");
                }
            },
            [](const RunConfig& c) {
                return std::string(c.extraction.perplexity_fallback_builtin ? "builtin" : "none");
            }},
        LITCX_PATH("abbreviations", extraction.resources.abbreviations),
        LITCX_PATH("pos_lexicon", extraction.resources.pos_lexicon),
        LITCX_PATH("participles", extraction.resources.participles),
        LITCX_PATH("easy_words", extraction.resources.easy_words),
        LITCX_PATH("vader_lexicon", extraction.resources.vader_lexicon),
        LITCX_PATH("syuzhet_lexicon", extraction.resources.syuzhet_lexicon),
        // tasks
        Key{"control", [](RunConfig& c, std::string_view v) { c.split.control = litcomplex::parse_control_pool(v); },
            [](const RunConfig& c) { return std::string(litcomplex::to_string(c.split.control)); }},
        LITCX_BOOL("exclusive", split.exclusive),
        LITCX_BOOL("unbalanced_pool", split.unbalanced_pool),
        LITCX_BOOL("group_by_author", split.group_by_author),
        LITCX_DOUBLE("train_fraction", split.train_fraction),
        LITCX_DOUBLE("rating_threshold", split.rating_threshold),
        LITCX_DOUBLE("max_missing_fraction", split.max_missing_fraction),
        LITCX_UINT("min_class_size", split.min_class_size),
        LITCX_UINT("n_runs", n_runs),
        // forest
        LITCX_UINT("n_trees", forest.n_trees),
        LITCX_UINT("max_features", forest.max_features),
        LITCX_UINT("min_leaf", forest.min_leaf),
        LITCX_UINT("max_depth", forest.max_depth),
    };
    return table;
}

#undef LITCX_UINT
#undef LITCX_DOUBLE
#undef LITCX_BOOL
#undef LITCX_PATH

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
    for (const auto& k : keys()) {
        if (k.name == key) {
            k.set(*this, trim(value));
            return;
        }
    }
    throw UserError("unknown config key '" + std::string(key) + "'");
}

void RunConfig::load_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot read config file " + path.string());
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UserError(path.string() + ":" + std::to_string(number) + ": expected key=value");
        }
        set(trim(std::string_view(t).substr(0, eq)), std::string_view(t).substr(eq + 1));
    }
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : keys()) out.emplace_back(std::string(k.name), k.get(*this));
    return out;
}

std::string RunConfig::echo() const {
    std::string s;
    for (const auto& [k, v] : entries()) s += k + "=" + v + "\n";
    return s;
}

litcomplex::TaskSpec RunConfig::task(std::string_view name) const {
    auto spec = litcomplex::make_task_spec(name);
    spec.n_runs = n_runs;
    spec.base_seed = seed;
    spec.split = split;
    spec.forest = forest;
    spec.forest.threads = threads;
    return spec;
}

}  // namespace litcx
