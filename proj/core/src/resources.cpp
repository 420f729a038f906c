#include "litcomplex/resources.hpp"

#include <fstream>
#include <sstream>

#include "litcomplex/error.hpp"

namespace litcomplex {

namespace detail {
struct EmbeddedResource {
    std::string_view name;
    std::string_view data;
};
// Generated at configure time from core/resources/.
extern const EmbeddedResource kEmbeddedResources[];
extern const std::size_t kEmbeddedResourceCount;
}  // namespace detail

std::string_view builtin_resource(std::string_view name) {
    for (std::size_t i = 0; i < detail::kEmbeddedResourceCount; ++i) {
        if (detail::kEmbeddedResources[i].name == name) return detail::kEmbeddedResources[i].data;
    }
    throw InvariantError("no bundled resource named " + std::string(name));
}

std::string load_resource(std::string_view name, const std::filesystem::path& override_path) {
    if (override_path.empty()) return std::string(builtin_resource(name));
    std::ifstream in(override_path, std::ios::binary);
    if (!in) throw UserError("cannot read resource file " + override_path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> resource_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        if (!line.empty() && line.front() != '#') lines.emplace_back(line);
        pos = nl + 1;
    }
    return lines;
}

}  // namespace litcomplex
