#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace litcomplex {

// 64-bit FNV-1a. Used to fingerprint resource files in run manifests.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex_digest(std::string_view data);

}  // namespace litcomplex
