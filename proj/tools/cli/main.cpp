#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "litcomplex/error.hpp"

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("litcx"));
    spdlog::set_pattern("litcx: %^%l%$: %v");

    CLI::App app{"Stylistic and narrative complexity features for novels, with the classification harness"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    std::map<std::string, std::string> values;
    std::vector<std::string> sets, external;
    bool exclusive = false, unbalanced = false, by_author = false, heldout = false, quiet = false;

    app.add_option("--config", config_file, "key=value file; flags override it");
    const std::vector<std::pair<std::string, std::string>> plain = {
        {"--corpus", "corpus"},   {"--metadata", "metadata"}, {"--features", "features"}, {"--out", "out"},
        {"--seed", "seed"},       {"--threads", "threads"},   {"--control", "control"},   {"--tasks", "tasks"},
    };
    for (const auto& [flag, key] : plain) {
        app.add_option_function<std::string>(flag, [&values, key = key](const std::string& v) { values[key] = v; },
                                             "sets " + key);
    }
    app.add_option("--external-perplexity", external, "CSV with header id,perplexity (repeatable)");
    app.add_flag("--exclusive", exclusive, "multiclass: one class per document (nobel > canon > prizes > bestseller)");
    app.add_flag("--unbalanced-pool", unbalanced, "multiclass: keep every candidate instead of balancing");
    app.add_flag("--group-by-author", by_author, "keep each author's documents on one side of the split");
    app.add_flag("--ngram-heldout", heldout, "score each document with an n-gram model that did not see it");
    app.add_option("--set", sets, "any config key as key=value (repeatable)");
    app.add_flag("-q,--quiet", quiet, "only print warnings and errors");

    auto* extract = app.add_subcommand("extract", "compute features.csv from a corpus");
    auto* classify = app.add_subcommand("classify", "run the binary, rating and multiclass tasks");
    auto* ablate = app.add_subcommand("ablate", "leave-one-group-out and single-group sweeps");
    auto* report = app.add_subcommand("report", "category overlap, feature distributions, decade counts");

    CLI11_PARSE(app, argc, argv);
    if (quiet) spdlog::set_level(spdlog::level::warn);

    litcx::RunConfig cfg;
    try {
        if (!config_file.empty()) cfg.load_file(config_file);
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw litcomplex::UserError("--set expects key=value, got '" + s + "'");
            cfg.set(s.substr(0, eq), s.substr(eq + 1));
        }
        for (const auto& [k, v] : values) cfg.set(k, v);
        if (!external.empty()) {
            cfg.external_perplexity.assign(external.begin(), external.end());
        }
        if (exclusive) cfg.split.exclusive = true;
        if (unbalanced) cfg.split.unbalanced_pool = true;
        if (by_author) cfg.split.group_by_author = true;
        if (heldout) cfg.extraction.ngram_heldout = true;
    } catch (const litcomplex::UserError& e) {
        spdlog::error("{}", e.what());
        return 1;
    }

    if (extract->parsed()) return litcx::run_guarded(litcx::cmd_extract, cfg);
    if (classify->parsed()) return litcx::run_guarded(litcx::cmd_classify, cfg);
    if (ablate->parsed()) return litcx::run_guarded(litcx::cmd_ablate, cfg);
    if (report->parsed()) return litcx::run_guarded(litcx::cmd_report, cfg);
    return 1;
}
