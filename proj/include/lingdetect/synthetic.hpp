#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lingdetect/corpus.hpp"
#include "lingdetect/detail/rng.hpp"
#include "lingdetect/features.hpp"

namespace lingdetect {

// Seeded numeric fixtures. Widths below kFeatureCount deliberately use the
// generic feature_<i> naming so reports stay honest about their origin.

// Two classes split by a wide margin on every informative column; any
// sane classifier reaches training accuracy 1.0.
inline FeatureMatrix synthetic_separable(std::size_t n_rows, std::size_t width,
                                         std::uint64_t seed) {
    detail::Rng rng(seed);
    FeatureMatrix m;
    for (std::size_t i = 0; i < n_rows; ++i) {
        const int y = static_cast<int>(i % 2);
        std::vector<double> row(width);
        for (std::size_t j = 0; j < width; ++j) row[j] = rng.next_gaussian();
        row[width / 2] = (y == 1 ? 4.0 : -4.0) + 0.5 * rng.next_gaussian();
        m.rows.push_back(std::move(row));
        m.labels.push_back(y);
        m.ids.push_back("sep-" + std::to_string(i));
    }
    return m;
}

inline constexpr std::size_t kPlantedWidth = 8;
inline constexpr std::array<std::size_t, 3> kPlantedInformative = {0, 1, 2};

// Three informative columns carry a +3 sigma class shift; the other five
// are pure noise. Feature selection should keep the planted trio.
inline FeatureMatrix synthetic_planted(std::size_t n_rows, std::uint64_t seed) {
    detail::Rng rng(seed);
    FeatureMatrix m;
    for (std::size_t i = 0; i < n_rows; ++i) {
        const int y = static_cast<int>(i % 2);
        std::vector<double> row(kPlantedWidth);
        for (std::size_t j = 0; j < kPlantedWidth; ++j)
            row[j] = rng.next_gaussian();
        if (y == 1)
            for (std::size_t j : kPlantedInformative) row[j] += 3.0;
        m.rows.push_back(std::move(row));
        m.labels.push_back(y);
        m.ids.push_back("pl-" + std::to_string(i));
    }
    return m;
}

// Two corpora with identical class structure but a large constant offset
// on every column of the second domain. Models fit on the first domain
// see all second-domain rows on one side of their decision geometry, so
// cross-domain scores collapse while in-domain scores stay high.
inline std::pair<FeatureMatrix, FeatureMatrix> synthetic_two_domain(
    std::size_t n_per_domain, std::uint64_t seed) {
    detail::Rng rng(seed);
    const std::size_t width = 8;
    const auto make = [&](const std::string& prefix, double offset) {
        FeatureMatrix m;
        for (std::size_t i = 0; i < n_per_domain; ++i) {
            const int y = static_cast<int>(i % 2);
            std::vector<double> row(width);
            for (std::size_t j = 0; j < width; ++j)
                row[j] = rng.next_gaussian() + offset;
            if (y == 1)
                for (std::size_t j : kPlantedInformative) row[j] += 3.0;
            m.rows.push_back(std::move(row));
            m.labels.push_back(y);
            m.ids.push_back(prefix + std::to_string(i));
        }
        return m;
    };
    return {make("dom-a-", 0.0), make("dom-b-", 6.0)};
}

// ---- synthetic text corpus ---------------------------------------------

namespace detail {

inline const char* pick(detail::Rng& rng, const std::vector<const char*>& pool) {
    return pool[static_cast<std::size_t>(rng.next_below(pool.size()))];
}

struct TextPools {
    std::vector<const char*> nouns = {
        "garden",  "library",  "river",     "market",   "bridge",  "workshop",
        "valley",  "orchard",  "lantern",   "notebook", "harbour", "meadow",
        "kitchen", "festival", "telescope", "bakery",   "engine",  "archive",
        "island",  "station",  "forest",    "museum",   "carpenter", "violin",
        "storm",   "window",   "ladder",    "compass",  "teacher", "neighbour"};
    std::vector<const char*> adjectives = {
        "quiet",   "bright",   "narrow", "ancient", "cheerful", "crooked",
        "patient", "restless", "gentle", "sturdy",  "pale",     "curious",
        "warm",    "distant",  "modest", "lively",  "weathered", "tidy"};
    std::vector<const char*> verbs_past = {
        "watched",  "repaired",  "crossed",  "sketched", "measured",
        "gathered", "followed",  "painted",  "carried",  "planted",
        "visited",  "borrowed",  "cleaned",  "explored", "described",
        "arranged", "inspected", "recorded", "opened",   "finished"};
    std::vector<const char*> adverbs = {
        "slowly",  "carefully", "quietly",   "eagerly",  "often",
        "rarely",  "together",  "yesterday", "twice",    "gradually"};
    std::vector<const char*> preps = {"near",   "behind", "beside",
                                      "across", "under",  "beyond"};
    std::vector<const char*> human_openers = {
        "I still remember how", "Honestly,", "Last spring,", "My sister said",
        "We never planned it, but", "For some reason,", "Back then,",
        "To be fair,"};
    std::vector<const char*> ai_openers = {
        "Furthermore,",    "Moreover,",  "In addition,",
        "Consequently,",   "Therefore,", "In conclusion,",
        "Notably,",        "Overall,"};
    std::vector<const char*> ai_stock = {
        "it is important to note that",
        "plays a crucial role in",
        "serves as a testament to",
        "highlights the significance of",
        "underscores the importance of",
        "provides valuable insights into"};
    std::vector<const char*> hedges = {"arguably", "generally", "typically",
                                       "largely",  "perhaps",   "broadly"};
    std::vector<const char*> contractions = {
        "didn't", "wasn't", "couldn't", "it's", "that's", "we're"};
};

inline std::string human_sentence(detail::Rng& rng, const TextPools& p) {
    std::string s;
    const double r = rng.next_double();
    if (r < 0.35) {
        s += pick(rng, p.human_openers);
        s += ' ';
    }
    s += "the ";
    s += pick(rng, p.adjectives);
    s += ' ';
    s += pick(rng, p.nouns);
    s += ' ';
    if (rng.next_double() < 0.3) {
        s += pick(rng, p.contractions);
        s += " quite ";
        s += pick(rng, p.adjectives);
        s += ", and it ";
    }
    s += pick(rng, p.verbs_past);
    s += " the ";
    s += pick(rng, p.nouns);
    if (rng.next_double() < 0.6) {
        s += ' ';
        s += pick(rng, p.preps);
        s += " the ";
        s += pick(rng, p.nouns);
    }
    if (rng.next_double() < 0.4) {
        s += ' ';
        s += pick(rng, p.adverbs);
    }
    const double tail = rng.next_double();
    if (tail < 0.08)
        s += '?';
    else if (tail < 0.14)
        s += '!';
    else
        s += '.';
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
    return s;
}

inline std::string ai_sentence(detail::Rng& rng, const TextPools& p) {
    std::string s;
    if (rng.next_double() < 0.55) {
        s += pick(rng, p.ai_openers);
        s += ' ';
    }
    s += "the ";
    s += pick(rng, p.adjectives);
    s += ' ';
    s += pick(rng, p.nouns);
    s += ' ';
    if (rng.next_double() < 0.5) {
        s += pick(rng, p.ai_stock);
        s += " the ";
        s += pick(rng, p.nouns);
        s += ", which ";
    }
    if (rng.next_double() < 0.4) {
        s += pick(rng, p.hedges);
        s += ' ';
    }
    s += pick(rng, p.verbs_past);
    s += " the ";
    s += pick(rng, p.adjectives);
    s += ' ';
    s += pick(rng, p.nouns);
    s += ' ';
    s += pick(rng, p.preps);
    s += " the ";
    s += pick(rng, p.nouns);
    s += '.';
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(s[0]));
    return s;
}

} // namespace detail

struct SyntheticTextParams {
    std::size_t n_docs = 200;
    std::uint64_t seed = 0;
    std::size_t min_words = 120;  // approximate lower bound per document
};

// Deterministic offline corpus: half human-styled, half ai-styled
// documents with domain and generator tags. The two styles differ in
// sentence-length spread, discourse-marker and hedge rates, punctuation
// mix, and phrase repetition, so extracted features separate the classes
// without being trivially constant.
inline std::vector<Document> synthetic_text_corpus(
    const SyntheticTextParams& params) {
    detail::Rng rng(params.seed);
    detail::TextPools pools;
    std::vector<Document> docs;
    docs.reserve(params.n_docs);
    for (std::size_t i = 0; i < params.n_docs; ++i) {
        const int label = static_cast<int>(i % 2);
        Document doc;
        doc.id = "syn-" + std::to_string(i);
        doc.label = label;
        doc.domain = (i / 2) % 2 == 0 ? "essays" : "notes";
        doc.generator = label == 1 ? ((i / 2) % 2 == 0 ? "model-a" : "model-b")
                                   : "";
        std::string text;
        std::size_t words = 0;
        while (words < params.min_words) {
            if (!text.empty()) text += "\n\n";
            const std::size_t n_sentences =
                label == 1 ? 4 + rng.next_below(3)
                           : 2 + rng.next_below(6);
            std::string para;
            for (std::size_t s = 0; s < n_sentences; ++s) {
                if (!para.empty()) para += ' ';
                para += label == 1 ? detail::ai_sentence(rng, pools)
                                   : detail::human_sentence(rng, pools);
            }
            for (char c : para)
                if (c == ' ') ++words;
            words += 1;
            text += para;
        }
        doc.text = std::move(text);
        docs.push_back(std::move(doc));
    }
    return docs;
}

} // namespace lingdetect
