#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lingdetect/detail/text.hpp"
#include "lingdetect/tokenizer.hpp"
#include "lingdetect/version.hpp"

namespace lingdetect {

struct GrammarHit {
    std::string rule_id;
    std::size_t begin = 0;  // byte span in the source text
    std::size_t end = 0;
};

struct GrammarReport {
    std::size_t count = 0;
    std::vector<GrammarHit> hits;
};

namespace detail {

inline bool vowel_letter(char c) {
    const char l = ascii_lower(c);
    return l == 'a' || l == 'e' || l == 'i' || l == 'o' || l == 'u';
}

// Vowel-letter words pronounced with a consonant onset ("a university").
inline bool consonant_sound_start(const std::string& lower) {
    static const char* prefixes[] = {"uni", "use", "usu", "usa", "eu",
                                     "ewe", "one", "once", "ufo"};
    for (const char* p : prefixes)
        if (lower.rfind(p, 0) == 0) return true;
    return false;
}

// Silent-h words taking "an" ("an hour").
inline bool silent_h_start(const std::string& lower) {
    static const char* prefixes[] = {"hour", "honest", "honor", "honour", "heir"};
    for (const char* p : prefixes)
        if (lower.rfind(p, 0) == 0) return true;
    return false;
}

inline bool wants_an(const std::string& lower) {
    if (lower.empty()) return false;
    if (silent_h_start(lower)) return true;
    return vowel_letter(lower[0]) && !consonant_sound_start(lower);
}

} // namespace detail

// Deterministic rule-based grammar check. Rule ids are stable strings;
// the active rule set is versioned (kGrammarRulesetVersion). Counts are
// comparable between documents checked with the same ruleset, not with
// external tools.
inline GrammarReport count_grammar_issues(std::string_view text) {
    namespace d = detail;
    GrammarReport report;
    auto add = [&](const char* id, std::size_t b, std::size_t e) {
        report.hits.push_back({id, b, e});
    };

    const std::vector<Token> tokens = tokenize(text);

    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const Token& prev = tokens[i - 1];
        const Token& cur = tokens[i];
        if (prev.is_word() && cur.is_word() && !prev.lower.empty() &&
            d::is_ascii_alpha(prev.lower[0]) && prev.lower == cur.lower)
            add("GR_REPEATED_WORD", prev.begin, cur.end);
    }

    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        const Token& art = tokens[i];
        const Token& next = tokens[i + 1];
        if (!next.is_word() || next.lower.empty() ||
            !d::is_ascii_alpha(next.lower[0]))
            continue;
        if (art.lower == "a" && d::wants_an(next.lower))
            add("GR_A_AN", art.begin, next.end);
        else if (art.lower == "an" && !d::wants_an(next.lower))
            add("GR_A_AN", art.begin, next.end);
    }

    // Capitalization is only checked for sentences that end in terminal
    // punctuation; fragments stay out of scope.
    for (const SentenceSpan& s : split_sentences(tokens)) {
        std::size_t last = s.end;
        while (last > s.begin && d::is_closer(tokens[last - 1])) --last;
        if (last == s.begin || !d::is_terminal_punct(tokens[last - 1])) continue;
        for (std::size_t i = s.begin; i < s.end; ++i) {
            const Token& t = tokens[i];
            if (!t.is_word()) continue;
            if (!t.surface.empty() && t.surface[0] >= 'a' && t.surface[0] <= 'z')
                add("GR_SENTENCE_CASE", t.begin, t.end);
            break;
        }
    }

    for (std::size_t i = 1; i < text.size(); ++i) {
        const char c = text[i];
        if ((c == ',' || c == '.' || c == ';' || c == ':' || c == '!' ||
             c == '?') &&
            (text[i - 1] == ' ' || text[i - 1] == '\t'))
            add("GR_SPACE_BEFORE_PUNCT", i - 1, i + 1);
    }

    {
        std::vector<std::pair<char, std::size_t>> stack;
        std::size_t quote_open = std::string::npos;
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            if (c == '(' || c == '[' || c == '{') {
                stack.emplace_back(c, i);
            } else if (c == ')' || c == ']' || c == '}') {
                const char open = c == ')' ? '(' : c == ']' ? '[' : '{';
                if (!stack.empty() && stack.back().first == open)
                    stack.pop_back();
                else
                    add("GR_UNMATCHED_DELIM", i, i + 1);
            } else if (c == '"') {
                if (quote_open == std::string::npos)
                    quote_open = i;
                else
                    quote_open = std::string::npos;
            }
        }
        for (const auto& [open, pos] : stack)
            add("GR_UNMATCHED_DELIM", pos, pos + 1);
        if (quote_open != std::string::npos)
            add("GR_UNMATCHED_DELIM", quote_open, quote_open + 1);
    }

    for (std::size_t i = 0; i < text.size();) {
        const char c = text[i];
        if (c != '.' && c != ',' && c != ';' && c != ':' && c != '!' &&
            c != '?') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] == c) ++j;
        const std::size_t run = j - i;
        const bool ellipsis = c == '.' && run == 3;
        if (run >= 2 && !ellipsis) add("GR_DOUBLE_PUNCT", i, j);
        i = j;
    }

    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        const Token& subj = tokens[i];
        const Token& verb = tokens[i + 1];
        if (!subj.is_word() || !verb.is_word()) continue;
        const std::string& s = subj.lower;
        const std::string& v = verb.lower;
        const bool third = s == "he" || s == "she" || s == "it";
        const bool first = s == "i";
        const bool plural = s == "you" || s == "we" || s == "they";
        bool hit = false;
        if (third) hit = v == "are" || v == "were" || v == "have" || v == "do";
        if (first) hit = v == "is" || v == "are" || v == "has" || v == "does";
        if (plural) hit = v == "is" || v == "was" || v == "has" || v == "does";
        if (hit) add("GR_SUBJ_VERB_AGREEMENT", subj.begin, verb.end);
    }

    std::sort(report.hits.begin(), report.hits.end(),
              [](const GrammarHit& a, const GrammarHit& b) {
                  if (a.begin != b.begin) return a.begin < b.begin;
                  if (a.end != b.end) return a.end < b.end;
                  return a.rule_id < b.rule_id;
              });
    report.count = report.hits.size();
    return report;
}

} // namespace lingdetect
