#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace litcomplex::csv {

using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;
    // 1-based line number of each row in the source file (header is line 1).
    std::vector<std::size_t> line_numbers;

    // Column index by header name, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

// RFC 4180 style: comma separated, double quotes escape commas/quotes/newlines.
// Throws UserError if the file cannot be opened or a row has the wrong width.
Table read(const std::filesystem::path& path);
Table parse(std::string_view text, std::string_view source_name = "<memory>");

std::string escape(std::string_view field);
std::string join(const Row& row);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

// Full-string parse; nullopt on any trailing garbage or non-finite input.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

}  // namespace litcomplex::csv
