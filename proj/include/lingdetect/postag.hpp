#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lingdetect/tokenizer.hpp"

namespace lingdetect {
namespace detail {

using WordSet = std::unordered_set<std::string>;
using WordMap = std::unordered_map<std::string, std::string>;

inline const WordSet& det_words() {
    static const WordSet s = {
        "a", "an", "the", "this", "these", "those", "each", "every", "either",
        "neither", "some", "any", "no", "both", "all", "another", "such",
        "many", "few", "much", "several", "most", "enough", "certain"};
    return s;
}

inline const WordSet& pron_words() {
    static const WordSet s = {
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
        "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
        "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
        "itself", "ourselves", "yourselves", "themselves", "who", "whom",
        "whose", "which", "what", "someone", "anyone", "everyone", "somebody",
        "anybody", "everybody", "nobody", "something", "anything",
        "everything", "nothing", "none", "others"};
    return s;
}

inline const WordSet& adp_words() {
    static const WordSet s = {
        "of", "in", "on", "at", "by", "for", "with", "about", "against",
        "between", "into", "through", "during", "before", "after", "above",
        "below", "from", "up", "down", "out", "off", "over", "under", "near",
        "upon", "within", "without", "across", "behind", "beyond", "around",
        "among", "along", "toward", "towards", "onto", "outside", "inside",
        "despite", "per", "via", "amid", "unlike", "like", "until", "as",
        "throughout", "beneath", "beside", "besides", "concerning", "regarding"};
    return s;
}

inline const WordSet& aux_words() {
    static const WordSet s = {
        "am", "is", "are", "was", "were", "be", "been", "being", "have",
        "has", "had", "having", "do", "does", "did", "doing", "can", "could",
        "may", "might", "must", "shall", "should", "will", "would", "ought"};
    return s;
}

inline const WordSet& cconj_words() {
    static const WordSet s = {"and", "or", "but", "nor", "yet", "so", "plus"};
    return s;
}

inline const WordSet& sconj_words() {
    static const WordSet s = {
        "because", "although", "though", "since", "while", "whereas", "if",
        "unless", "whenever", "wherever", "whether", "once", "when", "where",
        "why", "how", "unless", "lest", "albeit"};
    return s;
}

inline const WordSet& intj_words() {
    static const WordSet s = {"oh", "wow", "hey", "hello", "hi", "yes", "yeah",
                              "please", "ouch", "alas", "hmm", "uh", "um",
                              "okay", "ok", "ah", "oops", "hooray"};
    return s;
}

inline const WordSet& adv_words() {
    static const WordSet s = {
        "very", "really", "quite", "too", "also", "always", "never", "often",
        "usually", "sometimes", "rarely", "seldom", "here", "there", "now",
        "then", "soon", "already", "still", "just", "even", "only", "again",
        "twice", "perhaps", "maybe", "almost", "nearly", "rather", "somewhat",
        "instead", "together", "apart", "away", "back", "forward", "abroad",
        "anywhere", "everywhere", "nowhere", "somewhere", "today", "tomorrow",
        "yesterday", "tonight", "later", "ago", "ever", "however", "moreover",
        "furthermore", "therefore", "thus", "hence", "meanwhile", "otherwise",
        "anyway", "indeed", "else", "quite", "well", "far", "fast", "hard",
        "long", "enough", "alone", "ahead", "aside", "indoors", "outdoors",
        "overseas", "sideways", "upstairs", "downstairs", "meantime", "anymore"};
    return s;
}

inline const WordSet& adj_words() {
    static const WordSet s = {
        "good", "bad", "big", "small", "new", "old", "high", "low", "great",
        "little", "short", "own", "other", "important", "different", "large",
        "young", "early", "late", "easy", "strong", "weak", "happy", "sad",
        "free", "full", "special", "whole", "real", "major", "minor", "local",
        "social", "general", "public", "national", "political", "economic",
        "clear", "possible", "true", "false", "recent", "right", "wrong",
        "nice", "fine", "poor", "rich", "safe", "dangerous", "beautiful",
        "ugly", "warm", "cold", "hot", "cool", "dark", "bright", "light",
        "heavy", "deep", "wide", "narrow", "thick", "thin", "slow", "quick",
        "quiet", "loud", "simple", "complex", "common", "rare", "similar",
        "various", "available", "popular", "famous", "serious", "severe",
        "slight", "total", "entire", "single", "double", "distant", "modern",
        "ancient", "current", "future", "past", "final", "initial", "previous",
        "next", "able", "aware", "due", "ready", "likely", "unlikely",
        "necessary", "useful", "useless", "effective", "efficient",
        "significant", "huge", "tiny", "massive", "enormous", "vast", "fair",
        "unfair", "empty", "busy", "tired", "sick", "healthy", "alive", "dead",
        "wild", "calm", "angry", "afraid", "proud", "honest", "smart",
        "stupid", "funny", "interesting", "boring", "amazing", "wonderful",
        "terrible", "horrible", "awful", "excellent", "perfect", "main",
        "certain", "human", "personal", "private", "professional", "key"};
    return s;
}

inline const WordSet& num_words() {
    static const WordSet s = {
        "zero", "one", "two", "three", "four", "five", "six", "seven",
        "eight", "nine", "ten", "eleven", "twelve", "thirteen", "fourteen",
        "fifteen", "sixteen", "seventeen", "eighteen", "nineteen", "twenty",
        "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
        "hundred", "thousand", "million", "billion", "trillion", "dozen"};
    return s;
}

// Irregular inflection -> base form. Used by the tagger to recognise verbs
// and by the lemmatizer. Values are fixed points of the lemmatizer.
inline const WordMap& irregular_verbs() {
    static const WordMap m = {
        {"went", "go"},        {"gone", "go"},      {"goes", "go"},
        {"ran", "run"},        {"was", "be"},       {"were", "be"},
        {"is", "be"},          {"are", "be"},       {"am", "be"},
        {"been", "be"},        {"being", "be"},     {"has", "have"},
        {"had", "have"},       {"having", "have"},  {"did", "do"},
        {"does", "do"},        {"doing", "do"},     {"done", "do"},
        {"said", "say"},       {"says", "say"},     {"took", "take"},
        {"taken", "take"},     {"got", "get"},      {"gotten", "get"},
        {"came", "come"},      {"saw", "see"},      {"seen", "see"},
        {"knew", "know"},      {"known", "know"},   {"thought", "think"},
        {"made", "make"},      {"making", "make"},  {"found", "find"},
        {"gave", "give"},      {"given", "give"},   {"giving", "give"},
        {"told", "tell"},      {"felt", "feel"},    {"left", "leave"},
        {"leaving", "leave"},  {"kept", "keep"},    {"began", "begin"},
        {"begun", "begin"},    {"showed", "show"},  {"shown", "show"},
        {"heard", "hear"},     {"brought", "bring"},{"wrote", "write"},
        {"written", "write"},  {"writing", "write"},{"sat", "sit"},
        {"stood", "stand"},    {"lost", "lose"},    {"losing", "lose"},
        {"paid", "pay"},       {"met", "meet"},     {"led", "lead"},
        {"understood", "understand"},               {"spoke", "speak"},
        {"spoken", "speak"},   {"grew", "grow"},    {"grown", "grow"},
        {"won", "win"},        {"bought", "buy"},   {"sent", "send"},
        {"built", "build"},    {"fell", "fall"},    {"fallen", "fall"},
        {"sold", "sell"},      {"broke", "break"},  {"broken", "break"},
        {"held", "hold"},      {"ate", "eat"},      {"eaten", "eat"},
        {"drank", "drink"},    {"drunk", "drink"},  {"swam", "swim"},
        {"swum", "swim"},      {"flew", "fly"},     {"flown", "fly"},
        {"drove", "drive"},    {"driven", "drive"}, {"driving", "drive"},
        {"rode", "ride"},      {"ridden", "ride"},  {"wore", "wear"},
        {"worn", "wear"},      {"chose", "choose"}, {"chosen", "choose"},
        {"threw", "throw"},    {"thrown", "throw"}, {"caught", "catch"},
        {"taught", "teach"},   {"fought", "fight"}, {"slept", "sleep"},
        {"meant", "mean"},     {"dreamt", "dream"}, {"lay", "lie"},
        {"lain", "lie"},       {"lying", "lie"},    {"dying", "die"},
        {"tying", "tie"},      {"sang", "sing"},    {"sung", "sing"},
        {"rang", "ring"},      {"rung", "ring"},    {"rose", "rise"},
        {"risen", "rise"},     {"woke", "wake"},    {"woken", "wake"},
        {"spent", "spend"},    {"bent", "bend"},    {"lent", "lend"},
        {"shot", "shoot"},     {"struck", "strike"},{"swung", "swing"},
        {"hung", "hang"},      {"stuck", "stick"},  {"hid", "hide"},
        {"hidden", "hide"},    {"beat", "beat"},    {"became", "become"},
        {"becoming", "become"},{"using", "use"},    {"used", "use"},
        {"coming", "come"},    {"taking", "take"},  {"getting", "get"},
        {"putting", "put"},    {"letting", "let"},  {"hitting", "hit"},
        {"running", "run"},    {"sitting", "sit"},  {"setting", "set"},
        {"winning", "win"},    {"beginning", "begin"}};
    return m;
}

inline const WordMap& irregular_nouns() {
    static const WordMap m = {
        {"men", "man"},           {"women", "woman"},     {"children", "child"},
        {"feet", "foot"},         {"teeth", "tooth"},     {"mice", "mouse"},
        {"geese", "goose"},       {"lives", "life"},      {"wives", "wife"},
        {"knives", "knife"},      {"leaves", "leaf"},     {"loaves", "loaf"},
        {"halves", "half"},       {"selves", "self"},     {"shelves", "shelf"},
        {"thieves", "thief"},     {"wolves", "wolf"},     {"oxen", "ox"},
        {"analyses", "analysis"}, {"crises", "crisis"},   {"theses", "thesis"},
        {"hypotheses", "hypothesis"},                     {"phenomena", "phenomenon"},
        {"criteria", "criterion"},{"indices", "index"},   {"matrices", "matrix"},
        {"vertices", "vertex"},   {"appendices", "appendix"},
        {"heroes", "hero"},       {"potatoes", "potato"},
        {"tomatoes", "tomato"},   {"echoes", "echo"}};
    return m;
}

inline const WordMap& irregular_adjs() {
    static const WordMap m = {
        {"better", "good"},    {"best", "good"},     {"worse", "bad"},
        {"worst", "bad"},      {"further", "far"},   {"furthest", "far"},
        {"farther", "far"},    {"farthest", "far"},  {"elder", "old"},
        {"eldest", "old"},     {"less", "little"},   {"least", "little"}};
    return m;
}

// Common verb base forms. Recognition set for tagging and the target of
// the silent-e restoration rule in the lemmatizer.
inline const WordSet& verb_bases() {
    static const WordSet s = {
        "be", "have", "do", "say", "go", "get", "make", "know", "think",
        "take", "see", "come", "want", "look", "use", "find", "give", "tell",
        "work", "call", "try", "ask", "need", "feel", "become", "leave",
        "put", "mean", "keep", "let", "begin", "seem", "help", "talk", "turn",
        "start", "show", "hear", "play", "run", "move", "live", "believe",
        "hold", "bring", "happen", "write", "provide", "sit", "stand", "lose",
        "pay", "meet", "include", "continue", "set", "learn", "change",
        "lead", "understand", "watch", "follow", "stop", "create", "speak",
        "read", "allow", "add", "spend", "grow", "open", "walk", "win",
        "offer", "remember", "love", "consider", "appear", "buy", "wait",
        "serve", "die", "send", "expect", "build", "stay", "fall", "cut",
        "reach", "kill", "remain", "suggest", "raise", "pass", "sell",
        "require", "report", "decide", "pull", "return", "explain", "hope",
        "develop", "carry", "break", "receive", "agree", "support", "hit",
        "produce", "eat", "cover", "catch", "draw", "choose", "cause",
        "point", "listen", "realize", "place", "close", "involve",
        "increase", "describe", "reduce", "improve", "manage", "argue",
        "arrive", "compare", "share", "prepare", "achieve", "measure",
        "ensure", "notice", "drive", "wear", "fight", "throw", "teach",
        "fly", "swim", "drink", "ride", "sing", "dance", "jump", "sleep",
        "bark", "climb", "laugh", "cry", "smile", "shout", "wish", "enjoy",
        "visit", "travel", "cook", "clean", "wash", "push", "press", "claim",
        "state", "mention", "announce", "reveal", "confirm", "deny",
        "discuss", "examine", "analyze", "evaluate", "assess", "determine",
        "establish", "identify", "indicate", "demonstrate", "contain",
        "exist", "occur", "affect", "relate", "refer", "depend", "focus",
        "apply", "seek", "obtain", "maintain", "protect", "prevent", "avoid",
        "solve", "address", "enhance", "enable", "encourage", "highlight",
        "emphasize", "illustrate", "introduce", "present", "propose",
        "publish", "research", "study", "test", "train", "treat", "trust",
        "value", "view", "accept", "act", "adapt", "adjust", "admit",
        "adopt", "advance", "advise", "aim", "answer", "attempt", "attend",
        "attract", "balance", "base", "behave", "belong", "boost", "borrow",
        "bother", "calculate", "capture", "care", "celebrate", "charge",
        "check", "collect", "combine", "comment", "commit", "communicate",
        "complete", "conclude", "conduct", "connect", "construct", "consume",
        "contribute", "control", "convert", "convince", "copy", "correct",
        "count", "cross", "damage", "deal", "defend", "define", "deliver",
        "deserve", "design", "destroy", "divide", "doubt", "dream", "dress",
        "drop", "earn", "edit", "emerge", "employ", "end", "engage", "enter",
        "estimate", "expand", "experience", "express", "extend", "face",
        "fail", "feed", "fill", "finish", "fit", "fix", "form", "gain",
        "gather", "generate", "guess", "handle", "hang", "hate", "head",
        "hide", "hire", "hurt", "imagine", "implement", "imply", "impose",
        "invest", "invite", "join", "judge", "kick", "knock", "lack", "land",
        "last", "launch", "lay", "lie", "lift", "light", "limit", "link",
        "list", "locate", "lock", "mark", "match", "matter", "mind", "miss",
        "mix", "name", "note", "observe", "operate", "order", "organize",
        "own", "pack", "paint", "park", "participate", "perform", "pick",
        "plan", "plant", "pour", "practice", "predict", "prefer", "print",
        "process", "promise", "promote", "prove", "pursue", "qualify",
        "question", "quote", "race", "rain", "range", "rank", "rate",
        "react", "record", "recover", "reflect", "refuse", "regard",
        "register", "reject", "release", "rely", "remove", "rent", "repeat",
        "replace", "reply", "represent", "request", "rescue", "respond",
        "rest", "result", "retain", "retire", "review", "reward", "ring",
        "rise", "risk", "roll", "rush", "save", "scan", "score", "search",
        "secure", "select", "settle", "shake", "shape", "shift", "shine",
        "ship", "shoot", "shop", "sign", "signal", "sink", "smell", "sort",
        "sound", "spell", "spread", "spring", "stare", "stick", "store",
        "stress", "stretch", "strike", "struggle", "submit", "succeed",
        "suffer", "supply", "surround", "survive", "swing", "switch",
        "tackle", "tap", "target", "taste", "tend", "thank", "tie", "touch",
        "track", "trade", "transfer", "transform", "translate", "twist",
        "unite", "update", "upgrade", "urge", "vary", "vote", "wake", "warn",
        "wave", "weigh", "welcome", "wonder", "worry", "wrap", "assume",
        "bake", "block", "blow", "burn", "close", "crash", "date", "debate",
        "declare", "decline", "defeat", "delay", "demand", "display",
        "disturb", "dominate", "educate", "elect", "eliminate", "escape",
        "exceed", "exchange", "execute", "exercise", "expose", "found",
        "freeze", "frighten", "fulfill", "gaze", "grant", "greet", "guide",
        "harm", "heal", "hesitate", "honor", "host", "hunt", "ignore",
        "illustrate", "import", "impress", "inform", "insist", "inspire",
        "install", "intend", "interact", "interpret", "interrupt",
        "interview", "isolate", "justify", "lean", "lecture", "lend",
        "locate", "marry", "melt", "merge", "monitor", "motivate", "murder",
        "negotiate", "nod", "obey", "object", "occupy", "overcome", "owe",
        "persuade", "pose", "possess", "postpone", "pray", "preserve",
        "pretend", "proceed", "prompt", "punish", "purchase", "pursue",
        "recall", "recognize", "recommend", "reconstruct", "recruit",
        "reform", "regret", "relax", "remind", "repair", "rephrase",
        "resemble", "reserve", "resist", "resolve", "restore", "restrict",
        "retrieve", "reverse", "revise", "sail", "satisfy", "seize",
        "separate", "shout", "shrink", "sigh", "slide", "slip", "smash",
        "snap", "soak", "spare", "specify", "split", "spoil", "squeeze",
        "stimulate", "stir", "strengthen", "strip", "submit", "substitute",
        "suspect", "sustain", "swear", "sweep", "tear", "tempt", "threaten",
        "toss", "trace", "transmit", "trap", "tremble", "trigger", "undergo",
        "undertake", "unify", "utilize", "vanish", "venture", "verify",
        "violate", "wander", "weaken", "whisper", "withdraw", "witness",
        "yield", "scratch", "scream", "shrug", "slam", "sneak", "stumble"};
    return s;
}

inline bool undouble_target(std::string& stem) {
    const std::size_t n = stem.size();
    if (n < 3) return false;
    const char a = stem[n - 2], b = stem[n - 1];
    if (a != b) return false;
    if (a == 'l' || a == 's' || a == 'z' || a == 'f' || a == 'e' || a == 'o')
        return false;
    stem.pop_back();
    return true;
}

// Rule lemmatizer for verb inflections; irregular forms first, then
// suffix stripping with gemination undoubling and silent-e restoration
// against the known-base list.
inline std::string verb_lemma(const std::string& w) {
    const auto& irr = irregular_verbs();
    if (auto it = irr.find(w); it != irr.end()) return it->second;
    const auto& bases = verb_bases();
    if (bases.count(w)) return w;
    auto finish = [&](std::string stem) {
        if (bases.count(stem)) return stem;
        std::string doubled = stem;
        if (undouble_target(doubled) && bases.count(doubled)) return doubled;
        const std::string with_e = stem + "e";
        if (bases.count(with_e)) return with_e;
        if (undouble_target(stem)) return stem;
        return doubled;
    };
    const std::size_t n = w.size();
    if (n > 4 && w.ends_with("ies")) return w.substr(0, n - 3) + "y";
    if (n > 3 && w.ends_with("ied")) return w.substr(0, n - 3) + "y";
    if (n > 4 && w.ends_with("eed")) return w.substr(0, n - 1);
    if (n > 3 && w.ends_with("es")) {
        const std::string stem = w.substr(0, n - 2);
        if (stem.ends_with("s") || stem.ends_with("x") || stem.ends_with("z") ||
            stem.ends_with("ch") || stem.ends_with("sh") || stem.ends_with("o"))
            return stem;
        return finish(w.substr(0, n - 1));
    }
    if (n > 4 && w.ends_with("ed")) return finish(w.substr(0, n - 2));
    if (n > 5 && w.ends_with("ing")) return finish(w.substr(0, n - 3));
    if (n > 2 && w.ends_with("s") && !w.ends_with("ss") && !w.ends_with("us") &&
        !w.ends_with("is"))
        return w.substr(0, n - 1);
    return w;
}

inline std::string noun_lemma(const std::string& w) {
    const auto& irr = irregular_nouns();
    if (auto it = irr.find(w); it != irr.end()) return it->second;
    const std::size_t n = w.size();
    if (n > 4 && w.ends_with("ies")) return w.substr(0, n - 3) + "y";
    if (n > 3 && w.ends_with("es")) {
        const std::string stem = w.substr(0, n - 2);
        if (stem.ends_with("s") || stem.ends_with("x") || stem.ends_with("z") ||
            stem.ends_with("ch") || stem.ends_with("sh"))
            return stem;
    }
    if (n > 2 && w.ends_with("s") && !w.ends_with("ss") && !w.ends_with("us") &&
        !w.ends_with("is"))
        return w.substr(0, n - 1);
    return w;
}

inline std::string adj_lemma(const std::string& w) {
    const auto& irr = irregular_adjs();
    if (auto it = irr.find(w); it != irr.end()) return it->second;
    const auto& adjs = adj_words();
    if (adjs.count(w)) return w;
    auto try_stem = [&](std::string stem) -> std::string {
        if (adjs.count(stem)) return stem;
        if (adjs.count(stem + "e")) return stem + "e";
        if (stem.ends_with("i")) {
            std::string y = stem.substr(0, stem.size() - 1) + "y";
            if (adjs.count(y)) return y;
        }
        std::string undoubled = stem;
        if (undouble_target(undoubled) && adjs.count(undoubled)) return undoubled;
        return {};
    };
    const std::size_t n = w.size();
    if (n > 4 && w.ends_with("est")) {
        if (auto s = try_stem(w.substr(0, n - 3)); !s.empty()) return s;
    }
    if (n > 3 && w.ends_with("er")) {
        if (auto s = try_stem(w.substr(0, n - 2)); !s.empty()) return s;
    }
    return w;
}

inline bool looks_like_verb(const std::string& lower) {
    if (irregular_verbs().count(lower)) return true;
    if (verb_bases().count(lower)) return true;
    const std::string lemma = verb_lemma(lower);
    return lemma != lower && verb_bases().count(lemma);
}

inline bool capitalized(const std::string& surface) {
    return !surface.empty() && surface[0] >= 'A' && surface[0] <= 'Z';
}

inline bool all_caps(const std::string& surface) {
    if (surface.size() < 2) return false;
    for (char c : surface)
        if (c < 'A' || c > 'Z') return false;
    return true;
}

} // namespace detail

// Rule POS tagger over the 17-tag set: closed-class tables, morphology,
// and capitalization, with NOUN as the out-of-vocabulary default.
inline void pos_tag(std::vector<Token>& tokens) {
    namespace d = detail;
    bool sentence_start = true;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        Token& t = tokens[i];
        const std::string& w = t.lower;
        Pos tag = Pos::X;
        if (t.is_punct) {
            tag = Pos::PUNCT;
        } else if (t.is_symbol) {
            tag = Pos::SYM;
        } else if (t.is_number || d::num_words().count(w)) {
            tag = Pos::NUM;
        } else if (w == "n't" || w == "not") {
            tag = Pos::PART;
        } else if (w == "'re" || w == "'ve" || w == "'ll" || w == "'d" ||
                   w == "'m") {
            tag = Pos::AUX;
        } else if (w == "'s") {
            tag = (i > 0 && tokens[i - 1].pos == Pos::PRON) ? Pos::AUX
                                                            : Pos::PART;
        } else if (w == "to") {
            bool infinitive = false;
            if (i + 1 < tokens.size()) {
                const Token& next = tokens[i + 1];
                if (next.is_word() && d::looks_like_verb(next.lower))
                    infinitive = true;
            }
            tag = infinitive ? Pos::PART : Pos::ADP;
        } else if (w == "that") {
            Pos prev = Pos::X;
            for (std::size_t j = i; j > 0; --j) {
                if (tokens[j - 1].is_word()) {
                    prev = tokens[j - 1].pos;
                    break;
                }
                break;  // punctuation between: treat as clause start
            }
            if (prev == Pos::VERB || prev == Pos::AUX)
                tag = Pos::SCONJ;
            else if (prev == Pos::NOUN || prev == Pos::PROPN || prev == Pos::PRON)
                tag = Pos::PRON;
            else
                tag = Pos::DET;
        } else if (d::aux_words().count(w)) {
            tag = Pos::AUX;
        } else if (d::det_words().count(w)) {
            tag = Pos::DET;
        } else if (d::pron_words().count(w)) {
            tag = Pos::PRON;
        } else if (d::adp_words().count(w)) {
            tag = Pos::ADP;
        } else if (d::cconj_words().count(w)) {
            tag = Pos::CCONJ;
        } else if (d::sconj_words().count(w)) {
            tag = Pos::SCONJ;
        } else if (d::intj_words().count(w)) {
            tag = Pos::INTJ;
        } else if (d::adv_words().count(w)) {
            tag = Pos::ADV;
        } else if (d::adj_words().count(w) || d::irregular_adjs().count(w)) {
            tag = Pos::ADJ;
        } else if (d::adj_lemma(w) != w) {
            tag = Pos::ADJ;
        } else if (d::looks_like_verb(w)) {
            tag = Pos::VERB;
        } else if (w.size() > 3 && w.ends_with("ly")) {
            tag = Pos::ADV;
        } else if (w.size() > 4 && (w.ends_with("ing") || w.ends_with("ed"))) {
            tag = Pos::VERB;
        } else if (w.size() > 4 &&
                   (w.ends_with("tion") || w.ends_with("sion") ||
                    w.ends_with("ment") || w.ends_with("ness") ||
                    w.ends_with("ity") || w.ends_with("ship") ||
                    w.ends_with("hood") || w.ends_with("ism") ||
                    w.ends_with("ance") || w.ends_with("ence") ||
                    w.ends_with("ist") || w.ends_with("ology"))) {
            tag = Pos::NOUN;
        } else if (w.size() > 4 &&
                   (w.ends_with("ous") || w.ends_with("ful") ||
                    w.ends_with("less") || w.ends_with("able") ||
                    w.ends_with("ible") || w.ends_with("ive") ||
                    w.ends_with("ical") || w.ends_with("ish"))) {
            tag = Pos::ADJ;
        } else if (w.size() > 4 && (w.ends_with("ize") || w.ends_with("ise") ||
                                    w.ends_with("ify"))) {
            tag = Pos::VERB;
        } else if ((d::capitalized(t.surface) && !sentence_start) ||
                   d::all_caps(t.surface)) {
            tag = Pos::PROPN;
        } else {
            tag = Pos::NOUN;
        }
        t.pos = tag;
        if (t.is_word())
            sentence_start = false;
        else if (detail::is_terminal_punct(t))
            sentence_start = true;
    }
}

// Lemmas from irregular tables plus tag-conditioned suffix rules.
// Lemmas are lowercase; bundled exception values are fixed points.
inline void lemmatize(std::vector<Token>& tokens) {
    namespace d = detail;
    for (Token& t : tokens) {
        const std::string& w = t.lower;
        switch (t.pos) {
            case Pos::VERB:
                t.lemma = d::verb_lemma(w);
                break;
            case Pos::AUX:
                if (w == "'re" || w == "'m" || w == "'s")
                    t.lemma = "be";
                else if (w == "'ve")
                    t.lemma = "have";
                else if (w == "'ll")
                    t.lemma = "will";
                else if (w == "'d")
                    t.lemma = "would";
                else
                    t.lemma = d::verb_lemma(w);
                break;
            case Pos::NOUN:
            case Pos::PROPN:
                t.lemma = d::noun_lemma(w);
                break;
            case Pos::ADJ:
                t.lemma = d::adj_lemma(w);
                break;
            case Pos::PART:
                t.lemma = (w == "n't") ? "not" : w;
                break;
            default:
                t.lemma = w;
        }
    }
}

} // namespace lingdetect
