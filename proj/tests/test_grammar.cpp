#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "conlang/grammar.hpp"
#include "conlang/resources.hpp"

using namespace conlang;

namespace {

ResourcePack& pack() {
    static ResourcePack p = load_resource_pack(CONLANG_RESOURCE_DIR);
    return p;
}

GrammarExcerpt tiny_excerpt() {
    GrammarExcerpt g;
    GrammarSection sec;
    sec.title = "NOUNS";
    GrammarSubsection sub;
    sub.title = "Number";
    sub.paragraphs.push_back({{"The plural adds @-s@.", "Plural formation appends @-s@."}, {}});
    sub.paragraphs.push_back({{"Some exceptions:"},
                              {"@jeu@ > @jeux@ 'games'", "@pneu@ > @pneus@ 'tires'",
                               "@trou@ > @trous@ 'holes'"}});
    sec.subsections.push_back(sub);
    g.sections.push_back(sec);
    g.incidental_bitexts.push_back({"@pneus@", "tires"});
    g.marker_symbols = {"-", "#", "~", "*"};
    return g;
}

}  // namespace

TEST_CASE("canonical rendering has the fixed shape") {
    const GrammarExcerpt g = tiny_excerpt();
    const std::string text = canonical_grammar_rendering(g);
    CHECK(text.substr(0, 6) == "-----\n");
    CHECK(text.find("-----\nNOUNS\n-----\n") != std::string::npos);
    CHECK(text.find("* Number\n") != std::string::npos);
    CHECK(text.find("The plural adds @-s@.\n") != std::string::npos);
    // canonical output always uses paraphrase 0 and source list order
    CHECK(text.find("Plural formation appends") == std::string::npos);
    const auto jeux = text.find("@jeux@");
    const auto pneus = text.find("@pneus@");
    const auto trous = text.find("@trous@");
    CHECK(jeux < pneus);
    CHECK(pneus < trous);
    CHECK(canonical_grammar_rendering(g) == text);
}

TEST_CASE("variation is deterministic and never equals the canonical text") {
    const GrammarExcerpt g = tiny_excerpt();
    const std::string canonical = canonical_grammar_rendering(g);
    std::set<std::string> outputs;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::string varied = vary_grammar_excerpt(g, seed);
        CHECK(varied != canonical);
        CHECK(vary_grammar_excerpt(g, seed) == varied);
        outputs.insert(varied);
    }
    CHECK(outputs.size() > 10);  // the variation space is actually explored
}

TEST_CASE("variation picks exactly one paraphrase per paragraph and keeps all list items") {
    const GrammarExcerpt& g = pack().grammar_french;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const std::string varied = vary_grammar_excerpt(g, seed);
        for (const auto& sec : g.sections) {
            CHECK(varied.find(sec.title) != std::string::npos);
            for (const auto& sub : sec.subsections) {
                CHECK(varied.find(" " + sub.title + "\n") != std::string::npos);
                for (const auto& para : sub.paragraphs) {
                    std::size_t hits = 0;
                    for (const auto& p : para.paraphrases)
                        if (varied.find(p) != std::string::npos) ++hits;
                    CHECK(hits == 1);
                    for (const auto& item : para.list_items)
                        CHECK(varied.find(" " + item + "\n") != std::string::npos);
                }
            }
        }
    }
}

TEST_CASE("variation draws markers from the configured symbols") {
    const GrammarExcerpt& g = pack().grammar_french;
    const std::set<std::string> allowed(g.marker_symbols.begin(), g.marker_symbols.end());
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const std::string varied = vary_grammar_excerpt(g, seed);
        // the first line is the five-fold repeated title marker
        const std::string first = varied.substr(0, varied.find('\n'));
        REQUIRE(first.size() >= 5);
        const std::string marker = first.substr(0, first.size() / 5);
        CHECK(allowed.count(marker) == 1);
        CHECK(first == marker + marker + marker + marker + marker);
    }
}

TEST_CASE("degenerate excerpt still varies deterministically without crashing") {
    GrammarExcerpt g;
    GrammarSection sec;
    sec.title = "ONLY";
    GrammarSubsection sub;
    sub.title = "Sole";
    sub.paragraphs.push_back({{"One fixed paragraph."}, {}});
    sec.subsections.push_back(sub);
    g.sections.push_back(sec);
    g.marker_symbols = {"-"};
    const std::string varied = vary_grammar_excerpt(g, 7);
    CHECK(varied == vary_grammar_excerpt(g, 7));
    CHECK(varied.find("One fixed paragraph.") != std::string::npos);
    // the sole non-canonical degree of freedom is the marker choice
    CHECK(varied.find("- Sole\n") != std::string::npos);
}

TEST_CASE("excerpt validation rejects empty paraphrase banks") {
    GrammarExcerpt g = tiny_excerpt();
    g.sections[0].subsections[0].paragraphs[0].paraphrases.clear();
    CHECK_THROWS_AS(canonical_grammar_rendering(g), EmptyParaphraseBank);
}

TEST_CASE("shipped incidental bitexts occur verbatim in their grammar prose") {
    for (const GrammarExcerpt* g : {&pack().grammar_french, &pack().grammar_reversed_french,
                                    &pack().grammar_latin}) {
        const auto ibs = extract_incidental_bitexts(*g);
        CHECK(ibs.size() >= 20);
        for (const auto& ib : ibs) {
            bool found = false;
            for (const auto& sec : g->sections)
                for (const auto& sub : sec.subsections)
                    for (const auto& para : sub.paragraphs) {
                        for (const auto& p : para.paraphrases)
                            if (p.find(ib.conlang_template) != std::string::npos) found = true;
                        for (const auto& item : para.list_items)
                            if (item.find(ib.conlang_template) != std::string::npos) found = true;
                    }
            CHECK_MESSAGE(found, ib.conlang_template);
        }
    }
}

TEST_CASE("grammar cleartext only references alphabet characters inside spans") {
    struct Case {
        const GrammarExcerpt* g;
        const LanguageInventory* inv;
    };
    for (const Case& c : {Case{&pack().grammar_french, &pack().french_inventory},
                          Case{&pack().grammar_latin, &pack().latin_inventory}}) {
        const std::string text = canonical_grammar_rendering(*c.g);
        for (const auto& span : extract_encrypt_spans(parse_template(text)))
            for (char32_t cp : utf8::decode(span)) {
                if (!((cp >= U'a' && cp <= U'z') || cp > 0x7F)) continue;  // skip punctuation
                CHECK_MESSAGE(c.inv->clear_alphabet.contains(cp), span);
            }
    }
}
