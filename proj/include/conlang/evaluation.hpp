#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conlang/cipher.hpp"
#include "conlang/errors.hpp"
#include "conlang/utf8.hpp"

namespace conlang {

enum class MatchKind { Exact, AdjectiveOrder, BagOfWords, NoMatch, Unparseable };

inline std::string to_string(MatchKind k) {
    switch (k) {
        case MatchKind::Exact: return "exact";
        case MatchKind::AdjectiveOrder: return "adjective_order";
        case MatchKind::BagOfWords: return "bag_of_words";
        case MatchKind::NoMatch: return "no_match";
        case MatchKind::Unparseable: return "unparseable";
    }
    throw Error("unknown match kind");
}

inline MatchKind match_kind_from_string(std::string_view s) {
    if (s == "exact") return MatchKind::Exact;
    if (s == "adjective_order") return MatchKind::AdjectiveOrder;
    if (s == "bag_of_words") return MatchKind::BagOfWords;
    if (s == "no_match") return MatchKind::NoMatch;
    if (s == "unparseable") return MatchKind::Unparseable;
    throw MalformedFile("unknown match kind: " + std::string(s));
}

struct Judgment {
    std::string instance_id;
    std::string raw_completion;
    std::optional<std::string> extracted;
    int score = 0;  // percent, one of {0, 50, 100}
    MatchKind match_kind = MatchKind::Unparseable;

    bool operator==(const Judgment&) const = default;
};

// Content of the LAST well-formed <translation>...</translation> pair;
// chain-of-thought text may quote the tag format earlier in the completion.
inline std::optional<std::string> extract_translation(std::string_view completion) {
    static constexpr std::string_view open = "<translation>";
    static constexpr std::string_view close = "</translation>";
    const std::size_t close_at = completion.rfind(close);
    if (close_at == std::string_view::npos) return std::nullopt;
    const std::size_t open_at = completion.rfind(open, close_at);
    if (open_at == std::string_view::npos) return std::nullopt;
    return std::string(completion.substr(open_at + open.size(),
                                         close_at - open_at - open.size()));
}

// Lowercase, drop full stops, collapse whitespace runs, trim.
inline std::string normalize(std::string_view candidate) {
    std::u32string text = utf8::decode(candidate);
    std::u32string out;
    bool pending_space = false;
    for (char32_t cp : text) {
        if (cp == U'.') continue;
        if (utf8::is_space(cp)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) out.push_back(U' ');
        pending_space = false;
        out.push_back(utf8::to_lower(cp));
    }
    return utf8::encode(out);
}

inline std::vector<std::string> tokenize_words(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(normalized)};
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

// Exact match, with optional half credit for the adjective-order variant.
inline Judgment score_exact(std::string candidate, const std::string& reference,
                            const std::optional<std::string>& ad_order_ref) {
    Judgment j;
    j.extracted = candidate;
    if (candidate == reference) {
        j.score = 100;
        j.match_kind = MatchKind::Exact;
    } else if (ad_order_ref && candidate == *ad_order_ref) {
        j.score = 50;
        j.match_kind = MatchKind::AdjectiveOrder;
    } else {
        j.score = 0;
        j.match_kind = MatchKind::NoMatch;
    }
    return j;
}

// Token-multiset equality; used for the free-word-order Latin partitions.
inline Judgment score_bag_of_words(std::string candidate, const std::string& reference) {
    Judgment j;
    j.extracted = candidate;
    auto a = tokenize_words(candidate);
    auto b = tokenize_words(reference);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) {
        j.score = 100;
        j.match_kind = MatchKind::BagOfWords;
    } else {
        j.score = 0;
        j.match_kind = MatchKind::NoMatch;
    }
    return j;
}

// Full scoring path for one completion against its references.
inline Judgment judge_completion(const std::string& instance_id, const std::string& completion,
                                 const std::string& reference,
                                 const std::optional<std::string>& ad_order_ref,
                                 bool bag_of_words) {
    Judgment j;
    auto extracted = extract_translation(completion);
    if (!extracted) {
        j.score = 0;
        j.match_kind = MatchKind::Unparseable;
    } else if (bag_of_words) {
        j = score_bag_of_words(normalize(*extracted), normalize(reference));
    } else {
        std::optional<std::string> norm_ad;
        if (ad_order_ref) norm_ad = normalize(*ad_order_ref);
        j = score_exact(normalize(*extracted), normalize(reference), norm_ad);
    }
    j.instance_id = instance_id;
    j.raw_completion = completion;
    return j;
}

struct CellKey {
    std::string partition;
    std::string modality;
    std::string direction;
    bool cot = false;
    std::optional<std::string> matrix;  // engaged only when grouping by matrix

    auto operator<=>(const CellKey&) const = default;

    std::string label() const {
        std::string s = partition + "|" + modality + "|" + direction + "|" +
                        (cot ? "cot" : "spontaneous");
        if (matrix) s += "|" + *matrix;
        return s;
    }
};

struct CellStats {
    double mean = 0.0;
    std::size_t count = 0;
};

struct JudgedInstance {
    CellKey cell;
    int score = 0;
};

// Mean score per cell. Every judged instance must map to exactly one cell.
inline std::map<CellKey, CellStats> aggregate_accuracy(const std::vector<JudgedInstance>& rows) {
    std::map<CellKey, std::pair<double, std::size_t>> sums;
    for (const auto& row : rows) {
        if (row.score != 0 && row.score != 50 && row.score != 100)
            throw InconsistentGrouping("score outside {0,50,100}");
        auto& [sum, n] = sums[row.cell];
        sum += row.score;
        ++n;
    }
    std::map<CellKey, CellStats> out;
    for (const auto& [cell, acc] : sums)
        out[cell] = {acc.first / static_cast<double>(acc.second), acc.second};
    return out;
}

inline Json judgment_to_json(const Judgment& j) {
    Json out;
    out["instance_id"] = j.instance_id;
    out["score"] = j.score;
    out["match_kind"] = to_string(j.match_kind);
    if (j.extracted)
        out["extracted"] = *j.extracted;
    else
        out["extracted"] = nullptr;
    return out;
}

inline Judgment judgment_from_json(const Json& in) {
    Judgment j;
    try {
        j.instance_id = in.at("instance_id").get<std::string>();
        j.score = in.at("score").get<int>();
        j.match_kind = match_kind_from_string(in.at("match_kind").get<std::string>());
        if (!in.at("extracted").is_null()) j.extracted = in.at("extracted").get<std::string>();
    } catch (const Json::exception& e) {
        throw MalformedFile(std::string("bad judgment record: ") + e.what());
    }
    return j;
}

}  // namespace conlang
