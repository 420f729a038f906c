#include "litcomplex/stylometry.hpp"

#include <cmath>
#include <unordered_set>

#include <boost/iostreams/device/back_inserter.hpp>
#include <boost/iostreams/filter/bzip2.hpp>
#include <boost/iostreams/filtering_stream.hpp>

#include "litcomplex/error.hpp"
#include "litcomplex/resources.hpp"
#include "litcomplex/stats.hpp"

namespace litcomplex {

double msttr(std::span<const std::string> words, std::size_t segment_size) {
    if (segment_size == 0) throw InvariantError("msttr: segment size must be positive");
    if (words.size() < segment_size) {
        throw UndefinedFeature("msttr: " + std::to_string(words.size()) + " words, need " +
                               std::to_string(segment_size));
    }
    const std::size_t segments = words.size() / segment_size;
    double total = 0.0;
    std::unordered_set<std::string_view> types;
    for (std::size_t s = 0; s < segments; ++s) {
        types.clear();
        for (std::size_t i = s * segment_size; i < (s + 1) * segment_size; ++i) types.insert(words[i]);
        total += static_cast<double>(types.size()) / static_cast<double>(segment_size);
    }
    return total / static_cast<double>(segments);
}

double msttr(std::span<const Token> tokens, std::size_t segment_size) {
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t.is_word()) words.push_back(fold_apostrophes(t.normalized));
    }
    return msttr(std::span<const std::string>(words), segment_size);
}

WordSet default_easy_words() { return parse_word_list(builtin_resource(resource::easy_words)); }

TextCounts count_text(std::span<const Sentence> sentences, const WordSet& easy_words) {
    TextCounts c;
    c.sentences = static_cast<double>(sentences.size());
    for (const auto& s : sentences) {
        for (const auto& t : s.tokens) {
            if (!t.is_word()) continue;
            c.words += 1;
            c.syllables += t.syllables;
            if (t.syllables >= 3) c.polysyllables += 1;
            for (std::size_t i = 0; i < t.surface.size(); ++i) {
                const auto b = static_cast<unsigned char>(t.surface[i]);
                // Count code points that are not apostrophes or hyphens.
                if ((b & 0xC0) == 0x80) continue;
                if (b == '\'' || b == '-') continue;
                if (b == 0xE2 && t.surface.compare(i, 3, "\xE2\x80\x99") == 0) continue;
                c.letters += 1;
            }
            if (!easy_words.contains(fold_apostrophes(t.normalized))) c.difficult_words += 1;
        }
    }
    return c;
}

ReadabilityScores readability_from_counts(const TextCounts& c) {
    if (c.sentences <= 0 || c.words <= 0) throw UndefinedFeature("readability: no words");
    const double wps = c.words / c.sentences;
    const double spw = c.syllables / c.words;
    ReadabilityScores r;
    r.flesch_re = 206.835 - 1.015 * wps - 84.6 * spw;
    r.fk_grade = 0.39 * wps + 11.8 * spw - 15.59;
    r.smog = 1.0430 * std::sqrt(c.polysyllables * 30.0 / c.sentences) + 3.1291;
    r.ari = 4.71 * (c.letters / c.words) + 0.5 * wps - 21.43;
    const double pct_difficult = 100.0 * c.difficult_words / c.words;
    r.dale_chall = 0.1579 * pct_difficult + 0.0496 * wps;
    if (pct_difficult > 5.0) r.dale_chall += 3.6365;
    return r;
}

ReadabilityScores readability(std::span<const Sentence> sentences, const WordSet& easy_words) {
    if (sentences.size() < kMinReadabilitySentences) {
        throw UndefinedFeature("readability: " + std::to_string(sentences.size()) + " sentences, need " +
                               std::to_string(kMinReadabilitySentences));
    }
    return readability_from_counts(count_text(sentences, easy_words));
}

std::vector<double> readability_composite(std::span<const ReadabilityScores> scores) {
    std::vector<double> composite(scores.size(), 0.0);
    if (scores.empty()) return composite;
    auto add_column = [&](auto getter, double sign) {
        std::vector<double> col;
        col.reserve(scores.size());
        for (const auto& s : scores) col.push_back(sign * getter(s));
        const double m = stats::mean(col);
        const double sd = stats::population_sd(col);
        if (sd == 0.0) return;
        for (std::size_t i = 0; i < col.size(); ++i) composite[i] += (col[i] - m) / sd;
    };
    add_column([](const ReadabilityScores& s) { return s.flesch_re; }, -1.0);
    add_column([](const ReadabilityScores& s) { return s.fk_grade; }, 1.0);
    add_column([](const ReadabilityScores& s) { return s.smog; }, 1.0);
    add_column([](const ReadabilityScores& s) { return s.ari; }, 1.0);
    add_column([](const ReadabilityScores& s) { return s.dale_chall; }, 1.0);
    for (auto& v : composite) v /= 5.0;
    return composite;
}

std::size_t bzip2_compressed_size(std::string_view bytes) {
    namespace io = boost::iostreams;
    std::string compressed;
    {
        io::filtering_ostream out;
        out.push(io::bzip2_compressor(io::bzip2_params(kBzip2BlockSize)));
        out.push(io::back_inserter(compressed));
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    return compressed.size();
}

std::string join_sentences(std::string_view text, std::span<const Sentence> sentences, std::size_t n_sentences) {
    std::string joined;
    const std::size_t n = std::min(n_sentences, sentences.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i) joined += '\n';
        joined.append(text.substr(sentences[i].span.begin, sentences[i].span.end - sentences[i].span.begin));
    }
    return joined;
}

double compression_ratio(std::string_view text, std::span<const Sentence> sentences, std::size_t n_sentences) {
    const std::string joined = join_sentences(text, sentences, n_sentences);
    if (joined.empty()) throw UndefinedFeature("compression_ratio: empty text");
    return static_cast<double>(joined.size() * 8) / static_cast<double>(bzip2_compressed_size(joined) * 8);
}

}  // namespace litcomplex
