#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace litcomplex {

// Names of resource files compiled into the library.
namespace resource {
inline constexpr std::string_view abbreviations = "abbreviations.txt";
inline constexpr std::string_view pos_lexicon = "pos_lexicon.tsv";
inline constexpr std::string_view participles = "participles.txt";
inline constexpr std::string_view easy_words = "easy_words.txt";
inline constexpr std::string_view vader_lexicon = "vader_lexicon.tsv";
inline constexpr std::string_view syuzhet_lexicon = "syuzhet_lexicon.tsv";
inline constexpr std::string_view reference_results = "reference_results.csv";
}  // namespace resource

// Contents of a bundled resource. Throws InvariantError for unknown names.
std::string_view builtin_resource(std::string_view name);

// Reads `override_path` when non-empty, else the bundled copy.
std::string load_resource(std::string_view name, const std::filesystem::path& override_path = {});

// Non-empty, non-comment ('#') lines with surrounding whitespace trimmed.
std::vector<std::string> resource_lines(std::string_view text);

}  // namespace litcomplex
