#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "lingdetect/detail/text.hpp"
#include "lingdetect/lexicons.hpp"
#include "lingdetect/tokenizer.hpp"

namespace lingdetect {

struct SentimentScore {
    double polarity = 0.0;      // [-1, 1]
    double subjectivity = 0.0;  // [0, 1]
};

// Mean lexicon polarity/subjectivity over matched words in a token range.
// A negation token within the 3 preceding tokens of the range flips the
// matched word's polarity sign. No matches -> (0, 0).
inline SentimentScore sentiment(const std::vector<Token>& tokens,
                                std::size_t begin, std::size_t end,
                                const LexiconSet& lex) {
    double pol_sum = 0.0, subj_sum = 0.0;
    std::size_t matched = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const Token& t = tokens[i];
        if (!t.is_word()) continue;
        const auto it = lex.polarity.find(t.lower);
        if (it == lex.polarity.end()) continue;
        double pol = it->second.first;
        const std::size_t window_begin = i >= begin + 3 ? i - 3 : begin;
        for (std::size_t j = window_begin; j < i; ++j) {
            if (lex.negations.count(tokens[j].lower)) {
                pol = -pol;
                break;
            }
        }
        pol_sum += pol;
        subj_sum += it->second.second;
        ++matched;
    }
    if (matched == 0) return {};
    return {pol_sum / static_cast<double>(matched),
            subj_sum / static_cast<double>(matched)};
}

inline SentimentScore sentiment(const std::vector<Token>& tokens,
                                const LexiconSet& lex) {
    return sentiment(tokens, 0, tokens.size(), lex);
}

namespace detail {

inline const std::unordered_map<std::string, int>& syllable_exceptions() {
    static const std::unordered_map<std::string, int> m = {
        {"create", 2},  {"creates", 2}, {"created", 3}, {"creating", 3},
        {"being", 2},   {"going", 2},   {"doing", 2},   {"idea", 3},
        {"area", 3},    {"quiet", 2},   {"science", 2}, {"poem", 2},
        {"really", 3},  {"ion", 2},     {"lion", 2},    {"diet", 2}};
    return m;
}

inline bool syllable_vowel(char c, bool word_initial) {
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    return c == 'y' && !word_initial;
}

} // namespace detail

// Vowel-group syllable estimate with silent-e, -ed and -es corrections and
// a small exception table; always >= 1. Non-alphabetic characters are
// ignored, so hyphenated or apostrophized words count as one unit.
inline int count_syllables(const std::string& word) {
    std::string w;
    w.reserve(word.size());
    for (char c : word)
        if (detail::is_ascii_alpha(c)) w.push_back(detail::ascii_lower(c));
    if (w.empty()) return 1;

    const auto& exc = detail::syllable_exceptions();
    if (const auto it = exc.find(w); it != exc.end()) return it->second;

    int groups = 0;
    bool in_group = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const bool v = detail::syllable_vowel(w[i], i == 0);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    const std::size_t n = w.size();

    // Silent final e ("late"), except consonant+le ("table").
    if (n >= 2 && w[n - 1] == 'e' && groups > 1) {
        const bool cons_le = n >= 3 && w[n - 2] == 'l' &&
                             !detail::syllable_vowel(w[n - 3], false);
        if (!cons_le && detail::syllable_vowel(w[n - 2], false) == false)
            --groups;
    }
    // -ed is silent unless after t/d ("walked" vs "wanted"), and only when
    // the e formed its own group.
    if (n >= 3 && w[n - 2] == 'e' && w[n - 1] == 'd' && groups > 1) {
        const char before = w[n - 3];
        if (before != 't' && before != 'd' &&
            !detail::syllable_vowel(before, false))
            --groups;
    }
    // -es is silent after a plain consonant ("makes" vs "boxes").
    if (n >= 3 && w[n - 2] == 'e' && w[n - 1] == 's' && groups > 1) {
        const char before = w[n - 3];
        const bool sibilant = before == 's' || before == 'x' || before == 'z' ||
                              (n >= 4 && ((w[n - 4] == 'c' && before == 'h') ||
                                          (w[n - 4] == 's' && before == 'h')));
        if (!sibilant && !detail::syllable_vowel(before, false)) --groups;
    }
    return groups < 1 ? 1 : groups;
}

} // namespace lingdetect
