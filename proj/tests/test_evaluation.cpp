#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "conlang/evaluation.hpp"
#include "conlang/rng.hpp"

using namespace conlang;

namespace {

// Independent naive scorer: character-by-character normalization and a
// map-based multiset comparison, sharing no code with the library path.
std::string naive_normalize(const std::string& s) {
    std::string lowered;
    for (std::size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
        std::string ch = s.substr(i, len);
        if (len == 1 && ch[0] >= 'A' && ch[0] <= 'Z') ch[0] += 32;
        lowered += ch;
        i += len;
    }
    std::string no_stops;
    for (char c : lowered)
        if (c != '.') no_stops += c;
    std::string collapsed;
    bool in_space = true;  // also trims leading spaces
    for (char c : no_stops) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            in_space = true;
        } else {
            if (in_space && !collapsed.empty()) collapsed += ' ';
            in_space = false;
            collapsed += c;
        }
    }
    return collapsed;
}

int naive_score(const std::string& completion, const std::string& reference,
                const std::optional<std::string>& ad_ref, bool bag) {
    std::size_t close = completion.rfind("</translation>");
    if (close == std::string::npos) return 0;
    std::size_t open = completion.rfind("<translation>", close);
    if (open == std::string::npos) return 0;
    std::string cand =
        naive_normalize(completion.substr(open + 13, close - open - 13));
    std::string ref = naive_normalize(reference);
    if (bag) {
        std::map<std::string, int> ca, cb;
        std::istringstream ia(cand), ib(ref);
        std::string t;
        while (ia >> t) ca[t]++;
        while (ib >> t) cb[t]++;
        return ca == cb ? 100 : 0;
    }
    if (cand == ref) return 100;
    if (ad_ref && cand == naive_normalize(*ad_ref)) return 50;
    return 0;
}

}  // namespace

TEST_CASE("tag extraction takes the last well-formed pair") {
    CHECK(extract_translation("...<translation>les aveux</translation>") == "les aveux");
    CHECK(extract_translation("no tags here") == std::nullopt);
    CHECK(extract_translation("<translation>a</translation> x <translation>b</translation>") ==
          "b");
    CHECK(extract_translation("I will use <translation>...</translation> tags. "
                              "<translation>réponse</translation>") == "réponse");
    CHECK(extract_translation("</translation> only") == std::nullopt);
    CHECK(extract_translation("<translation> unclosed") == std::nullopt);
}

TEST_CASE("normalization rules") {
    CHECK(normalize("Les Aveux.") == "les aveux");
    CHECK(normalize("  a  b ") == "a b");
    CHECK(normalize("ÉTÉ. Déjà\tvu\n") == "été déjà vu");
    CHECK(normalize(normalize("  Lots.  OF. spaces.  ")) == normalize("  Lots.  OF. spaces.  "));
    CHECK(normalize("") == "");
    CHECK(normalize(" . . ") == "");
}

TEST_CASE("exact scoring with adjective-order half credit") {
    auto j = score_exact("les aveux", "les aveux", std::nullopt);
    CHECK(j.score == 100);
    CHECK(j.match_kind == MatchKind::Exact);

    j = score_exact("les jeux nouveaux", "les nouveaux jeux",
                    std::optional<std::string>("les jeux nouveaux"));
    CHECK(j.score == 50);
    CHECK(j.match_kind == MatchKind::AdjectiveOrder);

    j = score_exact("les aveu", "les aveux", std::nullopt);
    CHECK(j.score == 0);
    CHECK(j.match_kind == MatchKind::NoMatch);

    // without ad_order_ref equality is the only path to a nonzero score
    CHECK(score_exact("a b", "b a", std::nullopt).score == 0);
}

TEST_CASE("bag-of-words scoring") {
    CHECK(score_bag_of_words("piratam equus timet", "equus piratam timet").score == 100);
    CHECK(score_bag_of_words("equus equus timet", "equus piratam timet").score == 0);
    CHECK(score_bag_of_words("equus piratam timet", "equus piratam timet").score == 100);
    CHECK(score_bag_of_words("equus piratam", "equus piratam timet").score == 0);
}

TEST_CASE("unparseable completions score zero") {
    auto j = judge_completion("i", "thinking only, no tags", "ref", std::nullopt, false);
    CHECK(j.score == 0);
    CHECK(j.match_kind == MatchKind::Unparseable);
    CHECK(!j.extracted.has_value());
}

TEST_CASE("500-case synthetic suite matches the naive scorer") {
    Rng rng(41);
    const std::vector<std::string> words = {"les",  "aveux", "nouveaux", "jeux", "equus",
                                            "chat", "noir",  "piratam",  "timet"};
    auto pick_phrase = [&](std::size_t max_words) {
        std::string s;
        std::size_t n = 1 + rng.below(max_words);
        for (std::size_t i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += words[rng.below(words.size())];
        }
        return s;
    };
    for (int i = 0; i < 500; ++i) {
        std::string reference = pick_phrase(4);
        std::optional<std::string> ad_ref;
        if (rng.below(3) == 0) ad_ref = pick_phrase(4);
        bool bag = rng.below(4) == 0;

        std::string inner;
        switch (rng.below(5)) {
            case 0: inner = reference; break;
            case 1: inner = ad_ref ? *ad_ref : pick_phrase(4); break;
            case 2: {  // permutation of the reference tokens
                auto toks = tokenize_words(reference);
                rng.shuffle(toks);
                for (std::size_t k = 0; k < toks.size(); ++k)
                    inner += (k ? " " : "") + toks[k];
                break;
            }
            default: inner = pick_phrase(4);
        }
        std::string completion;
        switch (rng.below(4)) {
            case 0: completion = "<translation>" + inner + "</translation>"; break;
            case 1:
                completion = "Let me think about <translation> tags first. <translation>" +
                             inner + ".</translation>\n";
                break;
            case 2: completion = "No tags at all: " + inner; break;
            default:
                completion = "<translation>decoy</translation> and <translation>" + inner +
                             "</translation> trailing";
        }
        auto j = judge_completion("case", completion, reference, ad_ref, bag);
        CHECK(j.score == naive_score(completion, reference, ad_ref, bag));
    }
}

TEST_CASE("aggregation means and oracle") {
    std::vector<JudgedInstance> rows;
    CellKey a{"1", "W", "eng_to_art", false, std::nullopt};
    CellKey b{"2m", "W_G", "art_to_eng", true, std::optional<std::string>("french")};
    for (int i = 0; i < 50; ++i) rows.push_back({a, 100});
    for (int i = 0; i < 50; ++i) rows.push_back({a, 0});
    for (int i = 0; i < 4; ++i) rows.push_back({b, 0});
    auto table = aggregate_accuracy(rows);
    CHECK(table[a].mean == doctest::Approx(50.0));
    CHECK(table[a].count == 100);
    CHECK(table[b].mean == doctest::Approx(0.0));

    // naive recomputation over random judgments
    Rng rng(53);
    rows.clear();
    std::map<std::string, std::pair<double, int>> naive;
    for (int i = 0; i < 3000; ++i) {
        CellKey cell{std::to_string(rng.below(5)), "W", rng.below(2) ? "eng_to_art" : "art_to_eng",
                     rng.below(2) == 1, std::nullopt};
        int score = static_cast<int>(rng.below(3)) * 50;
        rows.push_back({cell, score});
        auto& [sum, n] = naive[cell.label()];
        sum += score;
        n += 1;
    }
    auto got = aggregate_accuracy(rows);
    CHECK(got.size() == naive.size());
    for (const auto& [cell, stats] : got) {
        const auto& [sum, n] = naive[cell.label()];
        CHECK(stats.count == static_cast<std::size_t>(n));
        CHECK(stats.mean == doctest::Approx(sum / n).epsilon(1e-12));
    }
}

TEST_CASE("judgment serialization round trip") {
    Judgment j;
    j.instance_id = "x-1";
    j.raw_completion = "<translation>a</translation>";
    j.extracted = "a";
    j.score = 100;
    j.match_kind = MatchKind::Exact;
    auto back = judgment_from_json(judgment_to_json(j));
    CHECK(back.instance_id == j.instance_id);
    CHECK(back.extracted == j.extracted);
    CHECK(back.score == j.score);
    CHECK(back.match_kind == j.match_kind);

    Judgment unparsed;
    unparsed.instance_id = "x-2";
    auto back2 = judgment_from_json(judgment_to_json(unparsed));
    CHECK(!back2.extracted.has_value());
    CHECK(back2.match_kind == MatchKind::Unparseable);
}
