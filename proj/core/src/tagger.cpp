#include "litcomplex/tagger.hpp"

#include <array>

#include "litcomplex/error.hpp"
#include "litcomplex/resources.hpp"

namespace litcomplex {

namespace {

const WordSet kBeForms = {"be", "am", "is", "are", "was", "were", "been", "being", "art", "wast", "wert"};
const WordSet kModals = {"can",  "could", "may",   "might", "must",  "shall", "should", "will",
                         "would", "ought", "shalt", "wilt", "canst", "couldst", "wouldst", "shouldst"};
const WordSet kHaveForms = {"have", "has", "had", "having", "hath", "hast"};
const WordSet kDoForms = {"do", "does", "did", "doth", "dost", "didst"};
const WordSet kGetForms = {"get", "gets", "got", "gotten", "getting"};
const WordSet kPossessives = {"my", "your", "his", "her", "its", "our", "their", "thy", "whose"};
const WordSet kSubordinators = {"because", "although", "though", "unless", "whether", "whereas", "if", "while"};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Unknown words: suffix rules, NOUN otherwise. -ed/-ing become VERB only
// after an auxiliary, which the context pass handles.
PosTag suffix_rule(std::string_view w) {
    if (ends_with(w, "ly")) return PosTag::Adv;
    if (ends_with(w, "tion") || ends_with(w, "ness") || ends_with(w, "ment")) return PosTag::Noun;
    if (ends_with(w, "ize") || ends_with(w, "ate")) return PosTag::Verb;
    return PosTag::Noun;
}

}  // namespace

WordSet parse_word_list(std::string_view text) {
    WordSet set;
    for (auto& line : resource_lines(text)) set.insert(to_lower(line));
    return set;
}

bool looks_like_participle(std::string_view normalized, const WordSet& irregular) {
    if (irregular.contains(std::string(normalized))) return true;
    return ends_with(normalized, "ed") || ends_with(normalized, "en");
}

LexiconTagger::LexiconTagger(std::string_view lexicon_text, WordSet irregular_participles)
    : participles_(std::move(irregular_participles)) {
    for (auto& line : resource_lines(lexicon_text)) {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw UserError("tagger lexicon: missing tab in line '" + line + "'");
        std::string word = to_lower(std::string_view(line).substr(0, tab));
        std::vector<PosTag> tags;
        std::string_view rest = std::string_view(line).substr(tab + 1);
        while (!rest.empty()) {
            const auto sp = rest.find(' ');
            const auto name = rest.substr(0, sp);
            if (!name.empty()) tags.push_back(parse_pos_tag(name));
            if (sp == std::string_view::npos) break;
            rest.remove_prefix(sp + 1);
        }
        if (tags.empty()) throw UserError("tagger lexicon: no tags for '" + word + "'");
        lexicon_.emplace(std::move(word), std::move(tags));
    }
}

std::shared_ptr<const LexiconTagger> LexiconTagger::bundled() {
    static const auto instance = std::make_shared<const LexiconTagger>(
        builtin_resource(resource::pos_lexicon), parse_word_list(builtin_resource(resource::participles)));
    return instance;
}

std::vector<PosTag> LexiconTagger::candidates(const std::string& w) const {
    if (kBeForms.contains(w) || kModals.contains(w)) return {PosTag::Aux};
    if (kSubordinators.contains(w)) return {PosTag::Conj};
    if (auto it = lexicon_.find(w); it != lexicon_.end()) return it->second;
    if (const auto apos = w.find('\''); apos != std::string::npos) {
        if (ends_with(w, "n't")) return {PosTag::Aux};
        const std::string base = w.substr(0, apos);
        if (kBeForms.contains(base) || kModals.contains(base)) return {PosTag::Aux};
        if (auto it = lexicon_.find(base); it != lexicon_.end()) return {it->second.front()};
        return {PosTag::Noun};
    }
    return {suffix_rule(w)};
}

void LexiconTagger::tag(std::span<Token> sentence) const {
    const std::size_t n = sentence.size();
    std::vector<std::vector<PosTag>> cands(n);
    std::vector<std::string> words(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!sentence[i].is_word()) continue;
        words[i] = fold_apostrophes(sentence[i].normalized);
        cands[i] = candidates(words[i]);
    }
    auto has = [&](std::size_t i, PosTag t) {
        for (auto c : cands[i]) {
            if (c == t) return true;
        }
        return false;
    };
    // Next word that is not an adverb, or n.
    auto next_content = [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!sentence[j].is_word()) return n;
            if (cands[j].front() != PosTag::Adv) return j;
        }
        return n;
    };

    bool verb_seen = false;
    for (std::size_t i = 0; i < n; ++i) {
        Token& tok = sentence[i];
        if (!tok.is_word()) {
            if (tok.pos == PosTag::Punct) verb_seen = false;
            continue;
        }
        const std::string& w = words[i];
        PosTag prev = PosTag::Punct;
        std::string_view prev_word;
        for (std::size_t j = i; j-- > 0;) {
            if (!sentence[j].is_word()) break;
            if (sentence[j].pos != PosTag::Adv) {
                prev = sentence[j].pos;
                prev_word = words[j];
                break;
            }
        }

        PosTag tag = cands[i].front();
        if (kHaveForms.contains(w) || kGetForms.contains(w)) {
            const std::size_t j = next_content(i);
            const bool participle =
                j < n && (participles_.contains(words[j]) || ((ends_with(words[j], "ed") || ends_with(words[j], "en")) &&
                                                              has(j, PosTag::Verb)));
            tag = participle ? PosTag::Aux : PosTag::Verb;
        } else if (kDoForms.contains(w)) {
            const std::size_t j = next_content(i);
            const bool aux = j < n && (has(j, PosTag::Verb) || cands[j].front() == PosTag::Pron);
            tag = aux ? PosTag::Aux : PosTag::Verb;
        } else if (cands[i].size() > 1 && has(i, PosTag::Noun) && has(i, PosTag::Verb)) {
            if (prev == PosTag::Aux || (prev == PosTag::Part && prev_word == "to")) {
                tag = PosTag::Verb;
            } else if (prev == PosTag::Det || prev == PosTag::Adj || prev == PosTag::Adp ||
                       (prev == PosTag::Pron && kPossessives.contains(std::string(prev_word)))) {
                tag = PosTag::Noun;
            } else if ((prev == PosTag::Pron || prev == PosTag::Noun) && !verb_seen) {
                tag = PosTag::Verb;
            }
        } else if (cands[i].front() == PosTag::Noun && !lexicon_.contains(w) && prev == PosTag::Aux &&
                   (ends_with(w, "ed") || ends_with(w, "ing"))) {
            tag = PosTag::Verb;
        }
        tok.pos = tag;
        if (tag == PosTag::Verb || tag == PosTag::Aux) verb_seen = true;
    }
}

}  // namespace litcomplex
