#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "litcomplex/experiments.hpp"
#include "litcomplex/features.hpp"

namespace litcx {

namespace fs = std::filesystem;

// Everything a command needs. Set from a key=value file, then from flags;
// `entries()` echoes the effective values so a run can be replayed with
// --config.
struct RunConfig {
    fs::path corpus;
    fs::path metadata;
    fs::path features;  // empty: <out>/features.csv
    fs::path out = "out";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::vector<std::string> tasks;  // empty: command default
    std::vector<fs::path> external_perplexity;

    litcomplex::ExtractionConfig extraction;
    litcomplex::SplitOptions split;
    litcomplex::ForestConfig forest;
    std::size_t n_runs = 10;

    // Throws UserError for an unknown key or a malformed value.
    void set(std::string_view key, std::string_view value);

    // Lines "key=value"; blank lines and '#' comments are skipped.
    void load_file(const fs::path& path);

    std::vector<std::pair<std::string, std::string>> entries() const;
    std::string echo() const;

    fs::path features_path() const { return features.empty() ? out / "features.csv" : features; }

    // Task spec with every shared option applied.
    litcomplex::TaskSpec task(std::string_view name) const;
};

}  // namespace litcx
