#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lingdetect/detail/text.hpp"

namespace lingdetect {

// Coarse universal part-of-speech tags (17-tag set).
enum class Pos : std::uint8_t {
    ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM,
    PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X
};

inline constexpr std::size_t kPosCount = 17;

inline const char* pos_name(Pos p) {
    static const char* names[kPosCount] = {
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
        "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};
    return names[static_cast<std::size_t>(p)];
}

struct Token {
    std::string surface;
    std::string lower;
    std::string lemma;       // filled by lemmatize()
    Pos pos = Pos::X;        // filled by pos_tag()
    std::size_t begin = 0;   // byte offset into the source text
    std::size_t end = 0;
    bool is_punct = false;
    bool is_symbol = false;  // $ % + = < > ^ ~ |
    bool is_number = false;
    bool is_stopword = false;  // filled during annotation
    bool is_word() const { return !is_punct && !is_symbol; }
};

enum class SentenceClass : std::uint8_t { Statement, Question, Exclamation };

// Half-open token index range; spans partition the token sequence.
struct SentenceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    SentenceClass terminal = SentenceClass::Statement;
    std::size_t size() const { return end - begin; }
};

namespace detail {

inline bool is_symbol_char(char c) {
    return c == '$' || c == '%' || c == '+' || c == '=' || c == '<' ||
           c == '>' || c == '^' || c == '~' || c == '|';
}

// Abbreviations whose trailing period does not end a sentence. Stored
// lowercase without the final dot.
inline const std::unordered_set<std::string>& abbreviation_set() {
    static const std::unordered_set<std::string> s = {
        "dr", "mr", "mrs", "ms", "prof", "sr", "jr", "st", "vs", "etc",
        "e.g", "i.e", "cf", "fig", "inc", "ltd", "corp", "dept", "approx",
        "a.m", "p.m", "u.s", "u.k", "ph.d", "mt", "vol", "al"};
    return s;
}

// True for "u.s", "a.m", "e.g": alternating single letters and dots.
inline bool is_initialism_body(std::string_view w) {
    if (w.size() < 3) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i % 2 == 0) {
            if (!is_ascii_alpha(w[i])) return false;
        } else if (w[i] != '.') {
            return false;
        }
    }
    return w.size() % 2 == 1;
}

} // namespace detail

// Rule tokenizer. Splits on whitespace; punctuation becomes its own token
// except in three guarded positions: decimal points between digits,
// hyphens/apostrophes between letters, and periods after known
// abbreviations or letter initials ("Dr.", "U.S."). English contraction
// clitics (n't 's 're 've 'll 'd 'm) split into separate tokens.
inline std::vector<Token> tokenize(std::string_view text) {
    namespace d = detail;
    std::vector<Token> raw;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (d::is_ascii_space(text[i])) {
            ++i;
            continue;
        }
        if (const std::size_t plen = d::utf8_punct_len(text, i)) {
            Token t;
            t.surface = std::string(text.substr(i, plen));
            t.lower = t.surface;
            t.begin = i;
            t.end = i + plen;
            t.is_punct = true;
            raw.push_back(std::move(t));
            i += plen;
            continue;
        }
        if (d::is_word_char(text[i])) {
            const std::size_t start = i;
            while (i < n) {
                if (d::is_word_char(text[i])) {
                    ++i;
                    continue;
                }
                const char c = text[i];
                const bool prev_digit = d::is_ascii_digit(text[i - 1]);
                const bool prev_alpha = i > start && d::is_ascii_alpha(text[i - 1]);
                const bool next_digit = i + 1 < n && d::is_ascii_digit(text[i + 1]);
                const bool next_alpha = i + 1 < n && d::is_ascii_alpha(text[i + 1]);
                if (c == '.' && prev_digit && next_digit) {
                    ++i;  // decimal point: 3.14 stays whole
                    continue;
                }
                if ((c == '\'' || c == '-') && prev_alpha && next_alpha) {
                    ++i;  // don't, well-known
                    continue;
                }
                if (c == '.' && prev_alpha) {
                    const std::string body =
                        d::to_lower(text.substr(start, i - start));
                    const bool abbrev = d::abbreviation_set().count(body) > 0 ||
                                        d::is_initialism_body(body) ||
                                        (body.size() == 1 && next_alpha);
                    if (abbrev) {
                        ++i;  // period stays inside the abbreviation token
                        // allow the next letter of an initialism (U.S.A.)
                        if (i < n && d::is_ascii_alpha(text[i]) && i + 1 < n &&
                            text[i + 1] == '.')
                            continue;
                        if (i < n && d::is_word_char(text[i]) &&
                            !d::is_initialism_body(
                                d::to_lower(text.substr(start, i - start))))
                            break;
                        if (i < n && d::is_ascii_alpha(text[i])) continue;
                        break;
                    }
                }
                break;
            }
            Token t;
            t.surface = std::string(text.substr(start, i - start));
            t.lower = d::to_lower(t.surface);
            t.begin = start;
            t.end = i;
            bool numeric = !t.surface.empty();
            for (char c : t.surface)
                if (!d::is_ascii_digit(c) && c != '.' && c != ',') numeric = false;
            t.is_number = numeric && d::is_ascii_digit(t.surface[0]);
            raw.push_back(std::move(t));
            continue;
        }
        Token t;
        t.surface = std::string(1, text[i]);
        t.lower = t.surface;
        t.begin = i;
        t.end = i + 1;
        if (d::is_symbol_char(text[i]))
            t.is_symbol = true;
        else
            t.is_punct = true;
        raw.push_back(std::move(t));
        ++i;
    }

    // Contraction pass: split trailing clitics off word tokens.
    std::vector<Token> out;
    out.reserve(raw.size());
    static const char* kClitics[] = {"n't", "'s", "'re", "'ve", "'ll", "'d", "'m"};
    for (auto& t : raw) {
        if (!t.is_word() || t.lower.find('\'') == std::string::npos) {
            out.push_back(std::move(t));
            continue;
        }
        std::string_view lower = t.lower;
        std::size_t clitic_len = 0;
        for (const char* c : kClitics) {
            const std::string_view cl(c);
            if (lower.size() > cl.size() && lower.ends_with(cl)) {
                clitic_len = cl.size();
                break;
            }
        }
        if (clitic_len == 0) {
            out.push_back(std::move(t));
            continue;
        }
        const std::size_t stem_len = t.surface.size() - clitic_len;
        Token stem;
        stem.surface = t.surface.substr(0, stem_len);
        stem.lower = t.lower.substr(0, stem_len);
        stem.begin = t.begin;
        stem.end = t.begin + stem_len;
        Token clitic;
        clitic.surface = t.surface.substr(stem_len);
        clitic.lower = t.lower.substr(stem_len);
        clitic.begin = stem.end;
        clitic.end = t.end;
        out.push_back(std::move(stem));
        out.push_back(std::move(clitic));
    }
    return out;
}

namespace detail {

inline bool is_terminal_punct(const Token& t) {
    return t.is_punct && t.surface.size() == 1 &&
           (t.surface[0] == '.' || t.surface[0] == '!' || t.surface[0] == '?');
}

inline bool is_closer(const Token& t) {
    if (!t.is_punct) return false;
    if (t.surface.size() == 1) {
        const char c = t.surface[0];
        return c == '\'' || c == '"' || c == ')' || c == ']' || c == '}';
    }
    return t.surface == "\xe2\x80\x99" || t.surface == "\xe2\x80\x9d";  // ’ ”
}

} // namespace detail

// Sentence boundaries over a token sequence. A sentence ends at a maximal
// run of ./!/? tokens plus any closing quotes or brackets that follow.
// Abbreviation periods never reach here: the tokenizer keeps them inside
// their word token.
inline std::vector<SentenceSpan> split_sentences(const std::vector<Token>& tokens) {
    std::vector<SentenceSpan> spans;
    const std::size_t n = tokens.size();
    std::size_t begin = 0;
    std::size_t i = 0;
    while (i < n) {
        if (!detail::is_terminal_punct(tokens[i])) {
            ++i;
            continue;
        }
        bool question = false, exclaim = false;
        while (i < n && detail::is_terminal_punct(tokens[i])) {
            question |= tokens[i].surface[0] == '?';
            exclaim |= tokens[i].surface[0] == '!';
            ++i;
        }
        while (i < n && detail::is_closer(tokens[i])) ++i;
        SentenceSpan s;
        s.begin = begin;
        s.end = i;
        s.terminal = question ? SentenceClass::Question
                   : exclaim  ? SentenceClass::Exclamation
                              : SentenceClass::Statement;
        spans.push_back(s);
        begin = i;
    }
    if (begin < n)
        spans.push_back({begin, n, SentenceClass::Statement});
    return spans;
}

inline std::vector<SentenceSpan> split_sentences(std::string_view text) {
    return split_sentences(tokenize(text));
}

// Non-empty segments split on runs of one or more newline characters.
inline std::vector<std::string> split_paragraphs(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    const auto flush = [&](std::size_t end) {
        const std::string seg = detail::trim(text.substr(start, end - start));
        if (!seg.empty()) out.push_back(seg);
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n' || text[i] == '\r') {
            flush(i);
            while (i < text.size() && (text[i] == '\n' || text[i] == '\r')) ++i;
            start = i;
            if (i < text.size()) --i;
        }
    }
    flush(text.size());
    return out;
}

} // namespace lingdetect
