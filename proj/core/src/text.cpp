#include "litcomplex/text.hpp"

#include <array>

#include "litcomplex/error.hpp"
#include "litcomplex/resources.hpp"

namespace litcomplex {

namespace {

constexpr std::array<std::string_view, 13> kTagNames = {"NOUN", "VERB", "AUX", "ADJ",  "ADV",  "PRON", "DET",
                                                        "ADP",  "CONJ", "NUM", "PART", "PUNCT", "OTHER"};

struct CodePoint {
    char32_t value;
    std::size_t length;
};

// Invalid sequences decode as U+FFFD one byte at a time.
CodePoint decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1};
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    auto bits = [&](std::size_t k) { return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F); };
    if ((b0 & 0xE0) == 0xC0 && b0 >= 0xC2 && cont(1)) return {((b0 & 0x1Fu) << 6) | bits(1), 2};
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        const char32_t cp = ((b0 & 0x0Fu) << 12) | (bits(1) << 6) | bits(2);
        if (cp >= 0x800) return {cp, 3};
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        const char32_t cp = ((b0 & 0x07u) << 18) | (bits(1) << 12) | (bits(2) << 6) | bits(3);
        if (cp >= 0x10000 && cp <= 0x10FFFF) return {cp, 4};
    }
    return {0xFFFD, 1};
}

bool is_space(char32_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == 0xA0 || c == 0x2028 ||
           c == 0x2029 || c == 0x3000 || (c >= 0x2000 && c <= 0x200A);
}

bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_letter(char32_t c) {
    if (c < 0x80) return is_ascii_alpha(c);
    if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
    return (c >= 0x370 && c <= 0x3FF && c != 0x37E && c != 0x387) || (c >= 0x400 && c <= 0x52F);
}

bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

bool is_upper(char32_t c) { return (c >= 'A' && c <= 'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7); }

bool is_opening_quote(char32_t c) { return c == '"' || c == '\'' || c == 0x201C || c == 0x2018; }

bool is_closing_mark(char32_t c) {
    return c == '"' || c == '\'' || c == ')' || c == ']' || c == 0x201D || c == 0x2019;
}

bool is_terminator(char32_t c) { return c == '.' || c == '!' || c == '?'; }

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }

// The abbreviation candidate is the run of letters and periods that ends at
// `dot` (exclusive), lowercased.
std::string word_before(std::string_view text, std::size_t dot) {
    std::size_t b = dot;
    while (b > 0) {
        const char c = text[b - 1];
        if (is_ascii_alpha(static_cast<unsigned char>(c)) || c == '.') {
            --b;
        } else {
            break;
        }
    }
    std::string w = to_lower(text.substr(b, dot - b));
    while (!w.empty() && w.front() == '.') w.erase(w.begin());
    return w;
}

}  // namespace

std::string_view to_string(PosTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

PosTag parse_pos_tag(std::string_view name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == name) return static_cast<PosTag>(i);
    }
    throw UserError("unknown POS tag '" + std::string(name) + "'");
}

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto [cp, len] = decode(s, i);
        if (cp >= 'A' && cp <= 'Z') {
            out += static_cast<char>(cp + 32);
        } else if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) {
            append_utf8(out, cp + 32);
        } else {
            out.append(s.substr(i, len));
        }
        i += len;
    }
    return out;
}

std::string fold_apostrophes(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto [cp, len] = decode(s, i);
        if (cp == 0x2019) {
            out += '\'';
        } else {
            out.append(s.substr(i, len));
        }
        i += len;
    }
    return out;
}

AbbreviationSet parse_abbreviations(std::string_view text) {
    AbbreviationSet set;
    for (auto& line : resource_lines(text)) {
        std::string w = to_lower(line);
        while (!w.empty() && w.back() == '.') w.pop_back();
        if (!w.empty()) set.insert(std::move(w));
    }
    return set;
}

AbbreviationSet default_abbreviations() { return parse_abbreviations(builtin_resource(resource::abbreviations)); }

std::vector<Sentence> segment_sentences(std::string_view text, const AbbreviationSet& abbreviations) {
    std::vector<Sentence> out;
    std::size_t start = std::string_view::npos;  // first byte of the open sentence
    std::size_t last_content_end = 0;            // one past its last non-space byte

    auto close = [&](std::size_t end) {
        Sentence s;
        s.index = out.size();
        s.span = {start, end};
        out.push_back(std::move(s));
        start = std::string_view::npos;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        auto [cp, len] = decode(text, i);
        if (is_space(cp)) {
            i += len;
            continue;
        }
        if (start == std::string_view::npos) start = i;
        if (!is_terminator(cp)) {
            i += len;
            last_content_end = i;
            continue;
        }

        const std::size_t first_terminator = i;
        std::size_t j = i;
        while (j < text.size() && is_terminator(static_cast<unsigned char>(text[j]))) ++j;
        std::size_t k = j;
        while (k < text.size()) {
            auto c = decode(text, k);
            if (!is_closing_mark(c.value)) break;
            k += c.length;
        }
        last_content_end = k;

        std::size_t m = k;
        while (m < text.size()) {
            auto c = decode(text, m);
            if (!is_space(c.value)) break;
            m += c.length;
        }
        bool split = false;
        if (m > k && m < text.size()) {
            const char32_t next = decode(text, m).value;
            split = is_upper(next) || is_opening_quote(next);
        }
        if (split && j - first_terminator == 1 && text[first_terminator] == '.') {
            if (abbreviations.contains(word_before(text, first_terminator))) split = false;
        }
        if (split) close(k);
        i = k;
    }
    if (start != std::string_view::npos) close(last_content_end);
    return out;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        auto [cp, len] = decode(text, i);
        if (is_space(cp)) {
            i += len;
            continue;
        }
        Token t;
        std::size_t end = i + len;
        if (is_letter(cp)) {
            // Extend over letters and over ' or - when a letter follows.
            while (end < text.size()) {
                auto c = decode(text, end);
                if (is_letter(c.value)) {
                    end += c.length;
                } else if ((is_apostrophe(c.value) || c.value == '-') && end + c.length < text.size() &&
                           is_letter(decode(text, end + c.length).value)) {
                    end += c.length;
                } else {
                    break;
                }
            }
            t.kind = TokenKind::Word;
        } else if (is_digit(cp)) {
            while (end < text.size() && is_digit(static_cast<unsigned char>(text[end]))) ++end;
            t.kind = TokenKind::Number;
            t.pos = PosTag::Num;
        } else {
            t.kind = TokenKind::Punct;
            t.pos = PosTag::Punct;
        }
        t.surface = std::string(text.substr(i, end - i));
        t.normalized = to_lower(t.surface);
        if (t.kind == TokenKind::Word) t.syllables = count_syllables(t.normalized);
        tokens.push_back(std::move(t));
        i = end;
    }
    return tokens;
}

std::vector<std::string> tokenize_surfaces(std::string_view text) {
    std::vector<std::string> out;
    for (auto& t : tokenize(text)) out.push_back(std::move(t.surface));
    return out;
}

int count_syllables(std::string_view word) {
    // ASCII letters only, lowercased; anything else is dropped.
    std::string w;
    for (char c : word) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x80 && is_ascii_alpha(u)) w += static_cast<char>(c | 0x20);
    }
    int groups = 0;
    bool in_group = false;
    for (char c : w) {
        const bool v = is_vowel(c);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    const std::size_t n = w.size();
    if (n >= 2 && w[n - 1] == 'e' && !is_vowel(w[n - 2])) {
        const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
        if (!consonant_le) --groups;
    }
    return groups < 1 ? 1 : groups;
}

}  // namespace litcomplex
