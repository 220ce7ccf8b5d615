#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lingdetect/detail/text.hpp"

namespace lingdetect {

// Versioned word lists backing the discourse/style/sentiment features.
// The built-in "v1" set ships with the library; custom sets load from a
// directory of one-entry-per-line UTF-8 files (`word[\tpolarity\tsubjectivity]`
// for polarity.txt). The version id is recorded in every FeatureVector.
struct LexiconSet {
    std::string version;

    std::unordered_set<std::string> stopwords;
    std::vector<std::string> discourse_markers;   // may contain multi-word phrases
    std::vector<std::string> transition_phrases;  // may contain multi-word phrases
    std::vector<std::string> hedges;
    std::vector<std::string> figurative_markers;
    std::unordered_set<std::string> modals;
    std::unordered_set<std::string> negations;
    std::unordered_set<std::string> first_person_pronouns;
    std::unordered_set<std::string> pronouns;
    // word -> (polarity in [-1,1], subjectivity in [0,1])
    std::unordered_map<std::string, std::pair<double, double>> polarity;

    bool complete() const {
        return !stopwords.empty() && !discourse_markers.empty() &&
               !transition_phrases.empty() && !hedges.empty() &&
               !figurative_markers.empty() && !modals.empty() &&
               !negations.empty() && !first_person_pronouns.empty() &&
               !pronouns.empty() && !polarity.empty();
    }

    static const LexiconSet& builtin();
    static LexiconSet load_dir(const std::string& dir, const std::string& version_id);
};

namespace detail {

inline std::vector<std::string> read_list_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("lexicon file missing: " + p.string());
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const std::string entry = trim(line);
        if (!entry.empty() && entry[0] != '#') out.push_back(to_lower(entry));
    }
    if (out.empty()) throw std::runtime_error("lexicon file empty: " + p.string());
    return out;
}

} // namespace detail

inline LexiconSet LexiconSet::load_dir(const std::string& dir, const std::string& version_id) {
    namespace fs = std::filesystem;
    const fs::path root(dir);
    LexiconSet lex;
    lex.version = version_id;
    auto as_set = [](std::vector<std::string> v) {
        return std::unordered_set<std::string>(v.begin(), v.end());
    };
    lex.stopwords = as_set(detail::read_list_file(root / "stopwords.txt"));
    lex.discourse_markers = detail::read_list_file(root / "discourse_markers.txt");
    lex.transition_phrases = detail::read_list_file(root / "transition_phrases.txt");
    lex.hedges = detail::read_list_file(root / "hedges.txt");
    lex.figurative_markers = detail::read_list_file(root / "figurative_markers.txt");
    lex.modals = as_set(detail::read_list_file(root / "modals.txt"));
    lex.negations = as_set(detail::read_list_file(root / "negations.txt"));
    lex.first_person_pronouns = as_set(detail::read_list_file(root / "first_person_pronouns.txt"));
    lex.pronouns = as_set(detail::read_list_file(root / "pronouns.txt"));

    std::ifstream in(root / "polarity.txt");
    if (!in) throw std::runtime_error("lexicon file missing: polarity.txt");
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string word;
        double pol = 0.0, subj = 0.0;
        if (std::getline(ss, word, '\t') && (ss >> pol >> subj))
            lex.polarity[detail::to_lower(detail::trim(word))] = {pol, subj};
    }
    if (lex.polarity.empty()) throw std::runtime_error("lexicon file empty: polarity.txt");
    if (!lex.complete()) throw std::runtime_error("lexicon set incomplete in " + dir);
    return lex;
}

inline const LexiconSet& LexiconSet::builtin() {
    static const LexiconSet lex = [] {
        LexiconSet l;
        l.version = "v1";

        // NLTK English stopword list.
        for (const char* w :
             {"i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
              "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he",
              "him", "his", "himself", "she", "she's", "her", "hers", "herself", "it", "it's",
              "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
              "who", "whom", "this", "that", "that'll", "these", "those", "am", "is", "are",
              "was", "were", "be", "been", "being", "have", "has", "had", "having", "do",
              "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
              "as", "until", "while", "of", "at", "by", "for", "with", "about", "against",
              "between", "into", "through", "during", "before", "after", "above", "below",
              "to", "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
              "further", "then", "once", "here", "there", "when", "where", "why", "how", "all",
              "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
              "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t",
              "can", "will", "just", "don", "don't", "should", "should've", "now", "d", "ll",
              "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
              "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't",
              "haven", "haven't", "isn", "isn't", "ma", "mightn", "mightn't", "mustn",
              "mustn't", "needn", "needn't", "shan", "shan't", "shouldn", "shouldn't",
              "wasn", "wasn't", "weren", "weren't", "won", "won't", "wouldn", "wouldn't",
              "n't"})
            l.stopwords.insert(w);

        l.discourse_markers = {
            "however", "therefore", "moreover", "furthermore", "nevertheless", "nonetheless",
            "meanwhile", "consequently", "additionally", "similarly", "likewise", "instead",
            "otherwise", "thus", "hence", "accordingly", "indeed", "besides", "anyway",
            "firstly", "secondly", "thirdly", "lastly", "finally", "overall", "ultimately",
            "in addition", "for example", "for instance", "in contrast", "on the contrary",
            "as a result", "in conclusion", "in summary", "in fact", "of course",
            "after all", "at the same time", "on the other hand", "in other words"};

        l.transition_phrases = {
            "first", "second", "third", "next", "then", "finally", "in addition",
            "furthermore", "moreover", "on the other hand", "in contrast", "however",
            "as a result", "therefore", "consequently", "in conclusion", "to summarize",
            "in summary", "for example", "for instance", "in particular", "specifically",
            "subsequently", "meanwhile", "afterward", "above all", "in other words",
            "to begin with", "as mentioned", "in turn"};

        l.hedges = {
            "maybe", "perhaps", "possibly", "probably", "likely", "unlikely", "apparently",
            "seemingly", "somewhat", "arguably", "presumably", "roughly", "approximately",
            "nearly", "almost", "generally", "usually", "often", "sometimes", "rarely",
            "may", "might", "could", "suggest", "suggests", "suggested", "appear", "appears",
            "appeared", "seem", "seems", "seemed", "tend", "tends", "tended", "assume",
            "assumes", "estimate", "estimated", "indicate", "indicates", "unclear",
            "uncertain", "sort of", "kind of", "more or less", "in general",
            "to some extent", "i think", "i believe", "i guess", "it seems"};

        l.figurative_markers = {
            "like a", "like an", "as if", "as though", "metaphorically", "figuratively",
            "literally", "heart of", "sea of", "flood of", "wave of", "storm of",
            "mountain of", "avalanche of", "whirlwind of", "crystal clear", "boiling over",
            "time flies", "a double-edged sword", "tip of the iceberg", "at a crossroads",
            "paints a picture", "sheds light", "shed light", "a beacon of", "the fabric of",
            "a tapestry of", "on the horizon", "an uphill battle", "a melting pot"};

        for (const char* w : {"can", "could", "may", "might", "must", "shall", "should",
                              "will", "would", "ought"})
            l.modals.insert(w);

        for (const char* w : {"not", "n't", "no", "never", "none", "nobody", "nothing",
                              "neither", "nor", "nowhere", "cannot", "hardly", "scarcely",
                              "barely"})
            l.negations.insert(w);

        for (const char* w : {"i", "me", "my", "mine", "we", "us", "our", "ours"})
            l.first_person_pronouns.insert(w);

        for (const char* w :
             {"i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them",
              "my", "your", "his", "its", "our", "their", "mine", "yours", "hers", "ours",
              "theirs", "myself", "yourself", "himself", "herself", "itself", "ourselves",
              "yourselves", "themselves", "who", "whom", "whose", "which", "what", "someone",
              "anyone", "everyone", "somebody", "anybody", "everybody", "nobody", "something",
              "anything", "everything", "nothing", "one", "others"})
            l.pronouns.insert(w);

        // Word -> (polarity, subjectivity). Values follow the conventions of
        // pattern-style sentiment lexicons.
        const struct { const char* w; double p, s; } kPolarity[] = {
            {"good", 0.7, 0.6},        {"great", 0.8, 0.75},      {"excellent", 1.0, 1.0},
            {"best", 1.0, 0.3},        {"better", 0.5, 0.5},      {"amazing", 0.6, 0.9},
            {"awesome", 1.0, 1.0},     {"wonderful", 1.0, 1.0},   {"fantastic", 0.4, 0.9},
            {"perfect", 1.0, 1.0},     {"beautiful", 0.85, 1.0},  {"lovely", 0.5, 0.75},
            {"nice", 0.6, 1.0},        {"happy", 0.8, 1.0},       {"glad", 0.5, 1.0},
            {"joy", 0.8, 0.8},         {"joyful", 0.8, 0.9},      {"delight", 0.8, 0.9},
            {"delightful", 1.0, 1.0},  {"pleasant", 0.73, 0.9},   {"pleased", 0.5, 0.8},
            {"love", 0.5, 0.6},        {"loved", 0.7, 0.8},       {"like", 0.3, 0.4},
            {"liked", 0.3, 0.5},       {"enjoy", 0.4, 0.5},       {"enjoyed", 0.4, 0.6},
            {"positive", 0.227, 0.55}, {"success", 0.6, 0.7},     {"successful", 0.75, 0.95},
            {"win", 0.6, 0.7},         {"winner", 0.6, 0.8},      {"strong", 0.4, 0.5},
            {"smart", 0.6, 0.8},       {"brilliant", 0.9, 0.9},   {"impressive", 0.9, 1.0},
            {"remarkable", 0.75, 0.75},{"outstanding", 0.9, 0.9}, {"superb", 0.9, 0.95},
            {"favorite", 0.5, 0.8},    {"fun", 0.3, 0.2},         {"funny", 0.25, 0.7},
            {"interesting", 0.5, 0.5}, {"exciting", 0.45, 0.8},   {"excited", 0.4, 0.8},
            {"helpful", 0.4, 0.5},     {"useful", 0.3, 0.3},      {"valuable", 0.4, 0.4},
            {"effective", 0.4, 0.6},   {"efficient", 0.4, 0.5},   {"reliable", 0.4, 0.6},
            {"safe", 0.5, 0.5},        {"clean", 0.367, 0.7},     {"fresh", 0.3, 0.5},
            {"easy", 0.433, 0.83},     {"simple", 0.0, 0.357},    {"clear", 0.1, 0.383},
            {"right", 0.286, 0.54},    {"true", 0.35, 0.65},      {"fair", 0.5, 0.9},
            {"kind", 0.6, 0.9},        {"gentle", 0.5, 0.75},     {"generous", 0.5, 0.6},
            {"honest", 0.3, 0.6},      {"calm", 0.3, 0.75},       {"comfortable", 0.5, 0.7},
            {"satisfied", 0.5, 0.7},   {"proud", 0.8, 0.9},       {"confident", 0.4, 0.7},
            {"hope", 0.3, 0.4},        {"hopeful", 0.5, 0.75},    {"optimistic", 0.5, 0.8},
            {"bright", 0.7, 0.8},      {"rich", 0.375, 0.5},      {"super", 0.6, 0.8},
            {"bad", -0.7, 0.667},      {"worse", -0.5, 0.6},      {"worst", -1.0, 1.0},
            {"terrible", -1.0, 1.0},   {"horrible", -1.0, 1.0},   {"awful", -1.0, 1.0},
            {"poor", -0.4, 0.6},       {"negative", -0.3, 0.6},   {"sad", -0.5, 1.0},
            {"unhappy", -0.6, 1.0},    {"angry", -0.5, 1.0},      {"mad", -0.625, 0.9},
            {"hate", -0.8, 0.9},       {"hated", -0.9, 0.9},      {"dislike", -0.4, 0.6},
            {"fear", -0.6, 0.8},       {"afraid", -0.6, 0.9},     {"scared", -0.6, 0.9},
            {"worried", -0.3, 0.6},    {"worry", -0.3, 0.5},      {"anxious", -0.5, 0.9},
            {"fail", -0.5, 0.5},       {"failed", -0.6, 0.6},     {"failure", -0.6, 0.7},
            {"lose", -0.4, 0.5},       {"loss", -0.4, 0.4},       {"lost", -0.4, 0.6},
            {"wrong", -0.5, 0.54},     {"false", -0.35, 0.65},    {"broken", -0.4, 0.6},
            {"weak", -0.5, 0.6},       {"ugly", -0.7, 1.0},       {"dirty", -0.6, 0.8},
            {"boring", -1.0, 1.0},     {"bored", -0.5, 0.9},      {"annoying", -0.625, 1.0},
            {"annoyed", -0.6, 0.9},    {"stupid", -0.8, 0.9},     {"dumb", -0.7, 0.9},
            {"useless", -0.5, 0.4},    {"worthless", -0.6, 0.6},  {"dangerous", -0.6, 0.9},
            {"harmful", -0.5, 0.6},    {"hurt", -0.6, 0.8},       {"pain", -0.7, 0.7},
            {"painful", -0.7, 0.8},    {"cruel", -0.8, 0.9},      {"evil", -1.0, 1.0},
            {"disaster", -0.8, 0.7},   {"tragic", -0.8, 0.9},     {"crisis", -0.5, 0.5},
            {"problem", -0.3, 0.4},    {"difficult", -0.5, 1.0},  {"hard", -0.292, 0.54},
            {"impossible", -0.667, 1.0}, {"slow", -0.3, 0.4},     {"expensive", -0.3, 0.6},
            {"cheap", -0.4, 0.7},      {"disappointing", -0.6, 0.7}, {"disappointed", -0.75, 0.75},
            {"frustrating", -0.6, 0.8},{"frustrated", -0.6, 0.8}, {"upset", -0.55, 0.9},
            {"miserable", -1.0, 1.0},  {"gloomy", -0.5, 0.8},     {"dark", -0.15, 0.4},
            {"doubt", -0.3, 0.5},      {"doubtful", -0.4, 0.8},   {"sorry", -0.5, 1.0},
            {"unfortunately", -0.5, 1.0}, {"fortunately", 0.5, 0.9}, {"unfair", -0.5, 0.9},
            {"strange", -0.05, 0.9},   {"odd", -0.25, 0.75},      {"sick", -0.7, 0.9},
            {"tired", -0.4, 0.8},      {"weird", -0.5, 0.9},
        };
        for (const auto& e : kPolarity) l.polarity[e.w] = {e.p, e.s};
        return l;
    }();
    return lex;
}

namespace detail {

// Split a lowercase phrase into its words ("on the other hand" -> 4 words).
inline std::vector<std::string> phrase_words(const std::string& phrase) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : phrase) {
        if (c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Occurrences of a (possibly multi-word) phrase in a lowercase token sequence.
inline std::size_t count_phrase(const std::vector<std::string>& tokens,
                                const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > tokens.size()) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
        bool match = true;
        for (std::size_t j = 0; j < phrase.size(); ++j) {
            if (tokens[i + j] != phrase[j]) {
                match = false;
                break;
            }
        }
        if (match) ++count;
    }
    return count;
}

inline std::size_t count_list_occurrences(const std::vector<std::string>& tokens,
                                          const std::vector<std::string>& list) {
    std::size_t total = 0;
    for (const auto& entry : list) total += count_phrase(tokens, phrase_words(entry));
    return total;
}

inline std::size_t count_list_distinct(const std::vector<std::string>& tokens,
                                       const std::vector<std::string>& list) {
    std::size_t distinct = 0;
    for (const auto& entry : list)
        if (count_phrase(tokens, phrase_words(entry)) > 0) ++distinct;
    return distinct;
}

} // namespace detail
} // namespace lingdetect
