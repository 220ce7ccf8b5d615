#pragma once

#include <cstddef>
#include <vector>

#include "lingdetect/postag.hpp"
#include "lingdetect/tokenizer.hpp"

namespace lingdetect {

// Wh-relatives plus "that" when tagging resolved it as a pronoun.
inline bool is_relative_pronoun(const Token& t) {
    if (t.pos != Pos::PRON) return false;
    return t.lower == "who" || t.lower == "whom" || t.lower == "whose" ||
           t.lower == "which" || t.lower == "that";
}

inline bool is_finite_verb(const Token& t) {
    return t.pos == Pos::VERB || t.pos == Pos::AUX;
}

inline bool is_infinitive_marker(const Token& t) {
    return t.pos == Pos::PART && t.lower == "to";
}

// Embedding-depth proxy for one sentence: 1 + subordinating conjunctions
// + relative pronouns + infinitive markers. Monotone in appended
// subordinate clauses; >= 1 always.
inline std::size_t estimate_parse_depth(const std::vector<Token>& tokens,
                                        const SentenceSpan& span) {
    std::size_t depth = 1;
    for (std::size_t i = span.begin; i < span.end; ++i) {
        const Token& t = tokens[i];
        if (t.pos == Pos::SCONJ || is_relative_pronoun(t) ||
            is_infinitive_marker(t))
            ++depth;
    }
    return depth;
}

inline std::size_t estimate_parse_depth(const std::vector<Token>& tokens) {
    return estimate_parse_depth(tokens, {0, tokens.size(), SentenceClass::Statement});
}

// Clause count for one sentence: 1 + subordinators + relative pronouns
// + coordinating conjunctions that join finite clauses (a finite verb
// occurs both before and after the conjunction within the sentence).
inline std::size_t count_clauses(const std::vector<Token>& tokens,
                                 const SentenceSpan& span) {
    std::size_t clauses = 1;
    for (std::size_t i = span.begin; i < span.end; ++i) {
        const Token& t = tokens[i];
        if (t.pos == Pos::SCONJ || is_relative_pronoun(t)) {
            ++clauses;
            continue;
        }
        if (t.pos == Pos::CCONJ) {
            bool verb_before = false, verb_after = false;
            for (std::size_t j = span.begin; j < i && !verb_before; ++j)
                verb_before = is_finite_verb(tokens[j]);
            for (std::size_t j = i + 1; j < span.end && !verb_after; ++j)
                verb_after = is_finite_verb(tokens[j]);
            if (verb_before && verb_after) ++clauses;
        }
    }
    return clauses;
}

inline std::size_t count_clauses(const std::vector<Token>& tokens) {
    return count_clauses(tokens, {0, tokens.size(), SentenceClass::Statement});
}

} // namespace lingdetect
