#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <zlib.h>

#include "lingdetect/detail/math.hpp"
#include "lingdetect/detail/text.hpp"
#include "lingdetect/grammar.hpp"
#include "lingdetect/lexicons.hpp"
#include "lingdetect/postag.hpp"
#include "lingdetect/sentiment.hpp"
#include "lingdetect/syntax.hpp"
#include "lingdetect/tokenizer.hpp"
#include "lingdetect/version.hpp"

namespace lingdetect {

inline constexpr std::size_t kFeatureCount = 38;

// Canonical column order. Every matrix, scaler, model and explanation in
// this library indexes features by position in this list.
inline const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "char_count",
        "word_count",
        "sentence_count",
        "paragraph_count",
        "punctuation_count",
        "unique_word_count",
        "vocabulary_size",
        "type_token_ratio",
        "hapax_ratio",
        "word_entropy",
        "repetition_rate",
        "flesch_reading_ease",
        "gzip_ratio",
        "predictability_score",
        "sentence_complexity",
        "clause_sentence_ratio",
        "sentence_length_variation",
        "sentence_length_difference",
        "pos_diversity",
        "pos_bigram_variety",
        "pos_trigram_variety",
        "pos_4gram_variety",
        "grammatical_mistakes",
        "stopword_count",
        "discourse_marker_count",
        "transition_variety_score",
        "paragraph_coherence",
        "pronoun_ratio",
        "personal_voice_score",
        "modal_frequency",
        "negation_frequency",
        "question_statement_ratio",
        "hedge_score",
        "sentiment_polarity",
        "sentiment_subjectivity",
        "emotion_variation",
        "specificity_score",
        "figurative_language_score"};
    return names;
}

inline std::size_t feature_index(std::string_view name) {
    const auto& names = feature_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw std::invalid_argument("unknown feature: " + std::string(name));
}

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    std::string lexicon_version;
    double operator[](std::size_t i) const { return values[i]; }
};

struct FeatureMatrix {
    std::vector<std::string> ids;
    std::vector<int> labels;                 // 0 = human, 1 = ai
    std::vector<std::vector<double>> rows;   // row-major, canonical columns
    bool scaled = false;
    std::string lexicon_version;

    std::size_t size() const { return rows.size(); }
    std::size_t width() const { return rows.empty() ? 0 : rows[0].size(); }
};

struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> stdev;  // population standard deviation, >= 0
};

namespace detail {

inline double entropy_bits(const std::unordered_map<std::string, std::size_t>& counts,
                           std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (const auto& [_, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h < 0.0 ? 0.0 : h;
}

// zlib-deflate-6 compressed size; the compressor id and level are pinned
// in version.hpp because they define the feature's absolute scale.
inline std::size_t compressed_size(std::string_view text) {
    uLongf bound = compressBound(static_cast<uLong>(text.size()));
    std::vector<Bytef> buf(bound);
    const int rc = compress2(buf.data(), &bound,
                             reinterpret_cast<const Bytef*>(text.data()),
                             static_cast<uLong>(text.size()), kCompressorLevel);
    if (rc != Z_OK) throw std::runtime_error("compression failed");
    return static_cast<std::size_t>(bound);
}

// TF-IDF over the document's own paragraphs; smooth idf, L2 norm.
inline double paragraph_coherence_score(const std::vector<std::string>& paragraphs) {
    const std::size_t n = paragraphs.size();
    if (n < 2) return 0.0;
    std::vector<std::unordered_map<std::string, double>> tf(n);
    std::unordered_map<std::string, std::size_t> df;
    for (std::size_t p = 0; p < n; ++p) {
        for (const Token& t : tokenize(paragraphs[p]))
            if (t.is_word()) tf[p][t.lower] += 1.0;
        for (const auto& [term, _] : tf[p]) ++df[term];
    }
    std::vector<std::unordered_map<std::string, double>> vec(n);
    std::vector<double> norm(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        for (const auto& [term, count] : tf[p]) {
            const double idf =
                std::log((1.0 + static_cast<double>(n)) /
                         (1.0 + static_cast<double>(df[term]))) + 1.0;
            const double w = count * idf;
            vec[p][term] = w;
            norm[p] += w * w;
        }
        norm[p] = std::sqrt(norm[p]);
    }
    double sim_sum = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (norm[p] == 0.0 || norm[p + 1] == 0.0) continue;
        double dot = 0.0;
        const auto& a = vec[p];
        const auto& b = vec[p + 1];
        const auto& small = a.size() <= b.size() ? a : b;
        const auto& large = a.size() <= b.size() ? b : a;
        for (const auto& [term, w] : small) {
            const auto it = large.find(term);
            if (it != large.end()) dot += w * it->second;
        }
        sim_sum += dot / (norm[p] * norm[p + 1]);
    }
    return sim_sum / static_cast<double>(n - 1);
}

inline std::size_t whitespace_word_count(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = is_ascii_space(c);
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

} // namespace detail

// All 38 features for one document. Deterministic; throws on input with
// no tokens.
inline FeatureVector extract(std::string_view text, const LexiconSet& lex) {
    namespace d = detail;
    std::vector<Token> tokens = tokenize(text);
    if (tokens.empty()) throw std::invalid_argument("document has no tokens");
    pos_tag(tokens);
    lemmatize(tokens);
    for (Token& t : tokens) t.is_stopword = lex.stopwords.count(t.lower) > 0;

    const std::vector<SentenceSpan> sentences = split_sentences(tokens);
    const std::vector<std::string> paragraphs = split_paragraphs(text);

    std::vector<std::string> words;  // lowercase word tokens, in order
    words.reserve(tokens.size());
    for (const Token& t : tokens)
        if (t.is_word()) words.push_back(t.lower);
    const std::size_t n_words = words.size();
    const double words_denom = static_cast<double>(std::max<std::size_t>(1, n_words));

    std::unordered_map<std::string, std::size_t> word_freq;
    for (const auto& w : words) ++word_freq[w];
    std::unordered_map<std::string, std::size_t> lemma_freq;
    for (const Token& t : tokens)
        if (t.is_word()) ++lemma_freq[t.lemma];

    FeatureVector fv;
    fv.lexicon_version = lex.version;
    auto set = [&](const char* name, double v) {
        fv.values[feature_index(name)] = v;
    };

    set("char_count", static_cast<double>(d::utf8_length(text)));
    set("word_count", static_cast<double>(d::whitespace_word_count(text)));
    set("sentence_count", static_cast<double>(sentences.size()));
    set("paragraph_count", static_cast<double>(paragraphs.size()));

    std::size_t punct_chars = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (d::is_ascii_punct(text[i])) {
            ++punct_chars;
        } else if (const std::size_t plen = d::utf8_punct_len(text, i)) {
            ++punct_chars;
            i += plen - 1;
        }
    }
    set("punctuation_count", static_cast<double>(punct_chars));

    set("unique_word_count", static_cast<double>(word_freq.size()));
    set("vocabulary_size", static_cast<double>(lemma_freq.size()));
    set("type_token_ratio", static_cast<double>(word_freq.size()) / words_denom);
    std::size_t hapax = 0;
    for (const auto& [_, c] : word_freq)
        if (c == 1) ++hapax;
    set("hapax_ratio", word_freq.empty()
                           ? 0.0
                           : static_cast<double>(hapax) /
                                 static_cast<double>(word_freq.size()));
    set("word_entropy", d::entropy_bits(lemma_freq, n_words));

    std::size_t bigram_total = n_words >= 2 ? n_words - 1 : 0;
    std::unordered_set<std::string> bigram_types;
    for (std::size_t i = 0; i + 1 < n_words; ++i)
        bigram_types.insert(words[i] + "\x1f" + words[i + 1]);
    set("repetition_rate",
        bigram_total == 0 ? 0.0
                          : static_cast<double>(bigram_total - bigram_types.size()) /
                                static_cast<double>(bigram_total));

    {
        const std::size_t flesch_words = d::whitespace_word_count(text);
        std::size_t syllables = 0;
        {
            // syllables over whitespace-delimited words, alphabetic content
            std::size_t start = 0;
            const std::string raw(text);
            for (std::size_t i = 0; i <= raw.size(); ++i) {
                if (i == raw.size() || d::is_ascii_space(raw[i])) {
                    if (i > start)
                        syllables += static_cast<std::size_t>(
                            count_syllables(raw.substr(start, i - start)));
                    start = i + 1;
                }
            }
        }
        const double w = static_cast<double>(std::max<std::size_t>(1, flesch_words));
        const double s = static_cast<double>(std::max<std::size_t>(1, sentences.size()));
        set("flesch_reading_ease",
            206.835 - 1.015 * (w / s) - 84.6 * (static_cast<double>(syllables) / w));
    }

    set("gzip_ratio", static_cast<double>(d::compressed_size(text)) /
                          static_cast<double>(std::max<std::size_t>(1, text.size())));

    {
        double surprisal = 0.0;
        for (const auto& w : words) {
            const double p = static_cast<double>(word_freq[w]) /
                             static_cast<double>(n_words);
            surprisal -= std::log2(p);
        }
        set("predictability_score", n_words == 0 ? 0.0 : surprisal / words_denom);
    }

    {
        double depth_sum = 0.0, clause_sum = 0.0;
        for (const SentenceSpan& s : sentences) {
            depth_sum += static_cast<double>(estimate_parse_depth(tokens, s));
            clause_sum += static_cast<double>(count_clauses(tokens, s));
        }
        const double s_denom =
            static_cast<double>(std::max<std::size_t>(1, sentences.size()));
        set("sentence_complexity", depth_sum / s_denom);
        set("clause_sentence_ratio", clause_sum / s_denom);
    }

    {
        std::vector<double> lengths;
        lengths.reserve(sentences.size());
        for (const SentenceSpan& s : sentences) {
            std::size_t c = 0;
            for (std::size_t i = s.begin; i < s.end; ++i)
                if (tokens[i].is_word()) ++c;
            lengths.push_back(static_cast<double>(c));
        }
        set("sentence_length_variation", lengths.empty() ? 0.0 : d::pop_std(lengths));
        double diff = 0.0;
        if (!lengths.empty()) {
            const auto [mn, mx] = std::minmax_element(lengths.begin(), lengths.end());
            diff = *mx - *mn;
        }
        set("sentence_length_difference", diff);
    }

    {
        std::unordered_map<std::string, std::size_t> tag_freq;
        for (const Token& t : tokens) ++tag_freq[pos_name(t.pos)];
        set("pos_diversity", d::entropy_bits(tag_freq, tokens.size()));
        auto ngram_variety = [&](std::size_t n) {
            std::unordered_set<std::string> types;
            for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
                std::string key;
                for (std::size_t j = 0; j < n; ++j) {
                    key += pos_name(tokens[i + j].pos);
                    key += '\x1f';
                }
                types.insert(key);
            }
            return static_cast<double>(types.size());
        };
        set("pos_bigram_variety", ngram_variety(2));
        set("pos_trigram_variety", ngram_variety(3));
        set("pos_4gram_variety", ngram_variety(4));
    }

    set("grammatical_mistakes",
        static_cast<double>(count_grammar_issues(text).count));

    {
        std::size_t stop = 0;
        for (const Token& t : tokens)
            if (t.is_word() && t.is_stopword) ++stop;
        set("stopword_count", static_cast<double>(stop));
    }

    set("discourse_marker_count", static_cast<double>(d::count_list_occurrences(
                                      words, lex.discourse_markers)));
    set("transition_variety_score", static_cast<double>(d::count_list_distinct(
                                        words, lex.transition_phrases)));
    set("paragraph_coherence", d::paragraph_coherence_score(paragraphs));

    {
        std::size_t prons = 0, first_person = 0, modals = 0, negs = 0;
        for (const Token& t : tokens) {
            if (t.pos == Pos::PRON) ++prons;
            if (!t.is_word()) continue;
            if (lex.first_person_pronouns.count(t.lower)) ++first_person;
            if (lex.modals.count(t.lower)) ++modals;
            if (lex.negations.count(t.lower)) ++negs;
        }
        set("pronoun_ratio", static_cast<double>(prons) / words_denom);
        set("personal_voice_score", static_cast<double>(first_person) / words_denom);
        set("modal_frequency", static_cast<double>(modals) / words_denom);
        set("negation_frequency", static_cast<double>(negs) / words_denom);
    }

    {
        std::size_t questions = 0, statements = 0;
        for (const SentenceSpan& s : sentences) {
            if (s.terminal == SentenceClass::Question)
                ++questions;
            else if (s.terminal == SentenceClass::Statement)
                ++statements;
        }
        set("question_statement_ratio",
            static_cast<double>(questions) /
                static_cast<double>(std::max<std::size_t>(1, statements)));
    }

    set("hedge_score",
        static_cast<double>(d::count_list_occurrences(words, lex.hedges)));

    {
        const SentimentScore doc = sentiment(tokens, lex);
        set("sentiment_polarity", doc.polarity);
        set("sentiment_subjectivity", doc.subjectivity);
        double shift_sum = 0.0;
        if (sentences.size() >= 2) {
            std::vector<double> pol(sentences.size());
            for (std::size_t i = 0; i < sentences.size(); ++i)
                pol[i] = sentiment(tokens, sentences[i].begin, sentences[i].end,
                                   lex).polarity;
            for (std::size_t i = 0; i + 1 < sentences.size(); ++i)
                shift_sum += std::abs(pol[i + 1] - pol[i]);
            shift_sum /= static_cast<double>(sentences.size() - 1);
        }
        set("emotion_variation", shift_sum);
    }

    {
        std::size_t specific = 0;
        for (const Token& t : tokens)
            if (t.pos == Pos::NOUN || t.pos == Pos::PROPN || t.pos == Pos::NUM)
                ++specific;
        set("specificity_score",
            static_cast<double>(specific) / static_cast<double>(tokens.size()));
    }

    set("figurative_language_score", static_cast<double>(d::count_list_occurrences(
                                         words, lex.figurative_markers)));

    for (double v : fv.values)
        if (!std::isfinite(v)) throw std::logic_error("non-finite feature value");
    return fv;
}

// Per-column sample mean and population standard deviation.
inline ScalerParams fit_scaler(const FeatureMatrix& m) {
    if (m.scaled) throw std::invalid_argument("scaler input is already scaled");
    if (m.size() < 2) throw std::invalid_argument("scaler needs at least 2 rows");
    const std::size_t cols = m.width();
    ScalerParams p;
    p.mean.assign(cols, 0.0);
    p.stdev.assign(cols, 0.0);
    const double n = static_cast<double>(m.size());
    for (const auto& row : m.rows)
        for (std::size_t c = 0; c < cols; ++c) p.mean[c] += row[c];
    for (std::size_t c = 0; c < cols; ++c) p.mean[c] /= n;
    for (const auto& row : m.rows)
        for (std::size_t c = 0; c < cols; ++c) {
            const double d = row[c] - p.mean[c];
            p.stdev[c] += d * d;
        }
    for (std::size_t c = 0; c < cols; ++c) p.stdev[c] = std::sqrt(p.stdev[c] / n);
    return p;
}

// value' = (value - mean) / std; zero-variance columns map to 0 so that
// constant features carry no signal instead of dividing by zero.
inline FeatureMatrix transform(const FeatureMatrix& m, const ScalerParams& p) {
    if (m.scaled) throw std::invalid_argument("matrix is already scaled");
    if (m.width() != p.mean.size() || p.mean.size() != p.stdev.size())
        throw std::invalid_argument("scaler layout mismatch");
    FeatureMatrix out = m;
    out.scaled = true;
    for (auto& row : out.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            row[c] = p.stdev[c] == 0.0 ? 0.0 : (row[c] - p.mean[c]) / p.stdev[c];
    return out;
}

inline std::vector<double> transform_row(const std::vector<double>& row,
                                         const ScalerParams& p) {
    if (row.size() != p.mean.size())
        throw std::invalid_argument("scaler layout mismatch");
    std::vector<double> out(row.size());
    for (std::size_t c = 0; c < row.size(); ++c)
        out[c] = p.stdev[c] == 0.0 ? 0.0 : (row[c] - p.mean[c]) / p.stdev[c];
    return out;
}

} // namespace lingdetect
