#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "lingdetect/grammar.hpp"
#include "lingdetect/lexicons.hpp"
#include "lingdetect/postag.hpp"
#include "lingdetect/sentiment.hpp"
#include "lingdetect/syntax.hpp"
#include "lingdetect/tokenizer.hpp"

using namespace lingdetect;

namespace {

std::vector<Token> annotate(const char* text) {
    std::vector<Token> toks = tokenize(text);
    pos_tag(toks);
    lemmatize(toks);
    return toks;
}

std::string render(const std::vector<Token>& toks) {
    std::string out;
    for (const Token& t : toks) {
        if (!out.empty()) out += ' ';
        out += t.surface;
        out += '/';
        out += pos_name(t.pos);
        out += '(';
        out += t.lemma;
        out += ')';
    }
    return out;
}

} // namespace

TEST_CASE("tokenizer, tagger and lemmatizer on reference sentences", "[lingcore]") {
    CHECK(render(annotate("The cat sat.")) ==
          "The/DET(the) cat/NOUN(cat) sat/VERB(sit) ./PUNCT(.)");
    CHECK(render(annotate("don't stop")) ==
          "do/AUX(do) n't/PART(not) stop/VERB(stop)");
    CHECK(render(annotate("Dr. Smith left. He ran.")) ==
          "Dr./NOUN(dr.) Smith/PROPN(smith) left/VERB(leave) ./PUNCT(.) "
          "He/PRON(he) ran/VERB(run) ./PUNCT(.)");
    CHECK(render(annotate("Is it? It is.")) ==
          "Is/AUX(be) it/PRON(it) ?/PUNCT(?) It/PRON(it) is/AUX(be) ./PUNCT(.)");
    CHECK(render(annotate("3 cats ate 2.5 apples")) ==
          "3/NUM(3) cats/NOUN(cat) ate/VERB(eat) 2.5/NUM(2.5) apples/NOUN(apple)");
    CHECK(render(annotate("The U.S. team won, e.g. in 1995.")) ==
          "The/DET(the) U.S./PROPN(u.s.) team/NOUN(team) won/VERB(win) "
          ",/PUNCT(,) e.g./NOUN(e.g.) in/ADP(in) 1995/NUM(1995) ./PUNCT(.)");
}

TEST_CASE("token flags and byte spans", "[lingcore]") {
    const std::vector<Token> toks = tokenize("He said 3.14, \"done\"!");
    REQUIRE(toks.size() >= 4);
    for (const Token& t : toks) {
        CHECK(t.begin < t.end);
        CHECK(t.is_word() == (!t.is_punct && !t.is_symbol));
    }
    std::size_t numbers = 0, puncts = 0;
    for (const Token& t : toks) {
        numbers += t.is_number;
        puncts += t.is_punct;
    }
    CHECK(numbers == 1);
    CHECK(puncts == 4);  // , " " !
}

TEST_CASE("sentence splitting", "[lingcore]") {
    CHECK(split_sentences(tokenize("The cat sat.")).size() == 1);
    CHECK(split_sentences(tokenize("Dr. Smith left. He ran.")).size() == 2);
    CHECK(split_sentences(tokenize("Is it? It is.")).size() == 2);
    CHECK(split_sentences(tokenize("The U.S. team won, e.g. in 1995.")).size() == 1);

    SECTION("terminal classes") {
        const auto toks = tokenize("Wait! Is it? It is.");
        const auto spans = split_sentences(toks);
        REQUIRE(spans.size() == 3);
        CHECK(spans[0].terminal == SentenceClass::Exclamation);
        CHECK(spans[1].terminal == SentenceClass::Question);
        CHECK(spans[2].terminal == SentenceClass::Statement);
    }

    SECTION("spans partition the token sequence") {
        const auto toks = tokenize("One. Two! Three? Trailing fragment");
        const auto spans = split_sentences(toks);
        REQUIRE_FALSE(spans.empty());
        CHECK(spans.front().begin == 0);
        CHECK(spans.back().end == toks.size());
        for (std::size_t i = 1; i < spans.size(); ++i)
            CHECK(spans[i].begin == spans[i - 1].end);
    }

    SECTION("closing quote stays with its sentence") {
        const auto toks = tokenize("He said \"done.\" Next one.");
        const auto spans = split_sentences(toks);
        REQUIRE(spans.size() == 2);
    }
}

TEST_CASE("paragraph splitting", "[lingcore]") {
    CHECK(split_paragraphs("p1\n\np2").size() == 2);
    CHECK(split_paragraphs("p1\np2").size() == 2);
    CHECK(split_paragraphs("\n\n").empty());
    CHECK(split_paragraphs("only one").size() == 1);
    const auto ps = split_paragraphs("  a  \r\n\r\n  b  ");
    REQUIRE(ps.size() == 2);
    CHECK(ps[0] == "a");
    CHECK(ps[1] == "b");
}

TEST_CASE("parse depth and clause counting", "[lingcore]") {
    {
        auto toks = annotate("Cats sleep because dogs bark.");
        const auto spans = split_sentences(toks);
        REQUIRE(spans.size() == 1);
        CHECK(estimate_parse_depth(toks, spans[0]) == 2);
        CHECK(count_clauses(toks, spans[0]) == 2);
    }
    {
        auto toks = annotate("Cats sleep and dogs bark.");
        CHECK(count_clauses(toks) == 2);  // finite verb on both sides of "and"
    }
    {
        auto toks = annotate("Cats and dogs sleep.");
        CHECK(count_clauses(toks) == 1);  // noun coordination only
    }
    {
        auto toks = annotate("I know that you know that I know.");
        CHECK(count_clauses(toks) == 3);
    }
    {
        auto toks = annotate("He wants to run fast.");
        const auto spans = split_sentences(toks);
        CHECK(estimate_parse_depth(toks, spans[0]) == 2);  // infinitive marker
    }
    {
        auto toks = annotate("The cat that sat was happy.");
        const auto spans = split_sentences(toks);
        CHECK(count_clauses(toks, spans[0]) == 2);  // relative pronoun
    }
    SECTION("depth is monotone in appended subordinate clauses") {
        auto base = annotate("Cats sleep.");
        auto more = annotate("Cats sleep because dogs bark because owls hoot.");
        CHECK(estimate_parse_depth(more) > estimate_parse_depth(base));
    }
}

TEST_CASE("grammar rules fire on minimal examples", "[lingcore]") {
    const auto one_hit = [](const char* text, const char* rule) {
        const GrammarReport rep = count_grammar_issues(text);
        INFO(text);
        REQUIRE(rep.count == 1);
        CHECK(rep.hits[0].rule_id == rule);
    };
    one_hit("the the cat", "GR_REPEATED_WORD");
    one_hit("a apple", "GR_A_AN");
    one_hit("Hello , world", "GR_SPACE_BEFORE_PUNCT");
    one_hit("it have been", "GR_SUBJ_VERB_AGREEMENT");
    one_hit("(open", "GR_UNMATCHED_DELIM");
    CHECK(count_grammar_issues("A cat sat.").count == 0);

    SECTION("a/an exceptions") {
        CHECK(count_grammar_issues("a university").count == 0);
        CHECK(count_grammar_issues("an hour").count == 0);
        CHECK(count_grammar_issues("an university").count == 1);
    }
    SECTION("lowercase sentence start, only for terminated sentences") {
        CHECK(count_grammar_issues("the cat sat.").count == 1);
        CHECK(count_grammar_issues("the cat sat").count == 0);  // fragment
    }
    SECTION("double punctuation, ellipsis exempt") {
        CHECK(count_grammar_issues("What?? Really").count == 1);
        CHECK(count_grammar_issues("Wait... maybe").count == 0);
    }
    SECTION("hits are sorted by byte span") {
        const GrammarReport rep = count_grammar_issues("a apple and a orange , yes");
        REQUIRE(rep.count >= 2);
        for (std::size_t i = 1; i < rep.hits.size(); ++i)
            CHECK(rep.hits[i - 1].begin <= rep.hits[i].begin);
        CHECK(rep.count == rep.hits.size());
    }
}

TEST_CASE("sentiment lookup with negation flip", "[lingcore]") {
    const LexiconSet& lex = LexiconSet::builtin();
    {
        const auto r = sentiment(tokenize("good"), lex);
        CHECK(r.polarity == Catch::Approx(0.7));
        CHECK(r.subjectivity == Catch::Approx(0.6));
    }
    {
        const auto r = sentiment(tokenize("not good"), lex);
        CHECK(r.polarity == Catch::Approx(-0.7));
        CHECK(r.subjectivity == Catch::Approx(0.6));
    }
    {
        const auto r = sentiment(tokenize("zzz qqq"), lex);
        CHECK(r.polarity == 0.0);
        CHECK(r.subjectivity == 0.0);
    }
    SECTION("negation window is three tokens") {
        const auto near = sentiment(tokenize("not very very good"), lex);
        CHECK(near.polarity < 0.0);
        const auto far = sentiment(tokenize("not a b c d good"), lex);
        CHECK(far.polarity > 0.0);
    }
}

TEST_CASE("syllable estimates", "[lingcore]") {
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("create") == 2);
    CHECK(count_syllables("a") == 1);
    CHECK(count_syllables("table") == 2);
    CHECK(count_syllables("late") == 1);
    CHECK(count_syllables("wanted") == 2);
    CHECK(count_syllables("walked") == 1);
    CHECK(count_syllables("beautiful") == 3);
    CHECK(count_syllables("the") == 1);
    CHECK(count_syllables("") == 1);
    CHECK(count_syllables("---") == 1);
}

TEST_CASE("builtin lexicon set is complete and versioned", "[lingcore]") {
    const LexiconSet& lex = LexiconSet::builtin();
    CHECK(lex.version == "v1");
    CHECK(lex.complete());
    CHECK(lex.stopwords.count("the") == 1);
    CHECK(lex.modals.count("should") == 1);
    CHECK(lex.negations.count("n't") == 1);
}
