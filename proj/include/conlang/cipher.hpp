#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "conlang/errors.hpp"
#include "conlang/rng.hpp"
#include "conlang/utf8.hpp"

namespace conlang {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_letterlike(char32_t cp) {
    if (utf8::is_space(cp)) return false;
    if (cp >= U'0' && cp <= U'9') return false;
    static constexpr std::u32string_view punct = U".,;:!?'\"-@()<>[]{}/\\`~#$%^&*_+=|";
    return punct.find(cp) == std::u32string_view::npos;
}

// The cleartext character inventory.
struct Alphabet {
    std::u32string characters;

    Alphabet() = default;
    explicit Alphabet(std::u32string chars) : characters(std::move(chars)) { validate(); }
    explicit Alphabet(std::string_view utf8_chars) : Alphabet(utf8::decode(utf8_chars)) {}

    void validate() const {
        std::set<char32_t> seen;
        for (char32_t c : characters) {
            if (!seen.insert(c).second) throw Error("alphabet characters must be distinct");
            if (!is_letterlike(c))
                throw Error("alphabet may not contain whitespace, digits, or punctuation");
        }
    }

    bool contains(char32_t c) const { return characters.find(c) != std::u32string::npos; }
    std::size_t size() const { return characters.size(); }

    bool operator==(const Alphabet&) const = default;
};

// Image of one cleartext character: a single symbol or a consonant-vowel pair.
struct CodePoint {
    bool digram = false;
    char32_t first = 0;
    char32_t second = 0;  // meaningful only for digrams

    static CodePoint monogram(char32_t c) { return {false, c, 0}; }
    static CodePoint make_digram(char32_t c, char32_t v) { return {true, c, v}; }

    bool operator==(const CodePoint&) const = default;

    std::u32string chars() const {
        return digram ? std::u32string{first, second} : std::u32string{first};
    }

    auto operator<=>(const CodePoint&) const = default;
};

enum class Scheme { SubstitutionOnly, SubstitutionWithReversal };

inline std::string to_string(Scheme s) {
    return s == Scheme::SubstitutionOnly ? "substitution" : "substitution_reversal";
}

inline Scheme scheme_from_string(std::string_view s) {
    if (s == "substitution") return Scheme::SubstitutionOnly;
    if (s == "substitution_reversal") return Scheme::SubstitutionWithReversal;
    throw MalformedFile("unknown scheme tag: " + std::string(s));
}

// ---------------------------------------------------------------------------
// Transpositions. Both lowercase their output and preserve inter-word
// whitespace exactly, so each is an involution up to case.

namespace detail {

inline bool is_internal_punct(char32_t c) {
    return c == U',' || c == U';' || c == U':' || c == U'.' || c == U'!' || c == U'?';
}

struct TokenizedText {
    std::u32string leading;                 // whitespace before the first word
    std::vector<std::u32string> cores;      // word bodies (apostrophes/hyphens included)
    std::vector<std::u32string> lead_puncts;// leading punctuation, travels with its word
    std::vector<std::u32string> puncts;     // trailing punctuation per word
    std::vector<std::u32string> separators; // whitespace between word i and i+1
    std::u32string trailing;                // whitespace after the last word
};

inline TokenizedText tokenize(const std::u32string& text) {
    TokenizedText t;
    std::size_t i = 0;
    while (i < text.size() && utf8::is_space(text[i])) t.leading.push_back(text[i++]);
    while (i < text.size()) {
        std::u32string token;
        while (i < text.size() && !utf8::is_space(text[i])) token.push_back(text[i++]);
        std::u32string punct;
        while (!token.empty() && is_internal_punct(token.back())) {
            punct.insert(punct.begin(), token.back());
            token.pop_back();
        }
        std::u32string lead;
        while (!token.empty() && is_internal_punct(token.front())) {
            lead.push_back(token.front());
            token.erase(token.begin());
        }
        if (token.empty()) {  // bare punctuation; keep it as a word
            token = lead + punct;
            lead.clear();
            punct.clear();
        }
        t.cores.push_back(std::move(token));
        t.lead_puncts.push_back(std::move(lead));
        t.puncts.push_back(std::move(punct));
        std::u32string sep;
        while (i < text.size() && utf8::is_space(text[i])) sep.push_back(text[i++]);
        if (i == text.size()) {
            t.trailing = std::move(sep);
        } else {
            t.separators.push_back(std::move(sep));
        }
    }
    return t;
}

}  // namespace detail

// Whole-string character reversal. Word-internal characters (including
// apostrophes and hyphens) reverse with their word, so a leading affix
// hyphen ends up trailing. An internal punctuation mark re-anchors after
// the word that now occupies its host's successor's slot; punctuation on
// the final word stays terminal.
inline std::string reverse_sentence(std::string_view text) {
    auto t = detail::tokenize(utf8::to_lower(utf8::decode(text)));
    const std::size_t n = t.cores.size();

    // Free-standing punctuation tokens keep their slots; only real words
    // mirror. Keeps the transposition an involution on any input.
    auto is_bare = [&](std::size_t i) {
        return !t.cores[i].empty() && detail::is_internal_punct(t.cores[i].front());
    };
    std::vector<std::size_t> real;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_bare(i)) real.push_back(i);
    const std::size_t r = real.size();

    std::vector<std::u32string> slots(n);
    for (std::size_t i = 0; i < n; ++i)
        if (is_bare(i)) slots[i] = t.cores[i];
    for (std::size_t j = 0; j < r; ++j) {
        const std::size_t src = real[r - 1 - j];
        std::u32string word = t.cores[src];
        std::reverse(word.begin(), word.end());
        slots[real[j]] = t.lead_puncts[src] + word;
    }
    for (std::size_t j = 0; j < r; ++j) {
        const std::u32string& punct = t.puncts[real[j]];
        if (punct.empty()) continue;
        // Terminal punctuation stays terminal; an internal mark re-anchors
        // after the word now holding its host's successor's slot.
        const std::size_t dest = (j + 1 == r) ? real[r - 1] : real[r - 2 - j];
        slots[dest] += punct;
    }

    std::u32string out = t.leading;
    for (std::size_t i = 0; i < n; ++i) {
        out += slots[i];
        if (i < t.separators.size()) out += t.separators[i];
    }
    out += t.trailing;
    return utf8::encode(out);
}

// Per-word character reversal; word order and punctuation anchoring kept.
inline std::string reverse_words(std::string_view text) {
    auto t = detail::tokenize(utf8::to_lower(utf8::decode(text)));
    std::u32string out = t.leading;
    for (std::size_t i = 0; i < t.cores.size(); ++i) {
        std::u32string word = t.cores[i];
        std::reverse(word.begin(), word.end());
        out += t.lead_puncts[i];
        out += word;
        out += t.puncts[i];
        if (i < t.separators.size()) out += t.separators[i];
    }
    out += t.trailing;
    return utf8::encode(out);
}

// ---------------------------------------------------------------------------

struct CipherKey {
    Alphabet clear_alphabet;
    std::u32string consonants;         // C
    std::u32string vowels;             // V
    std::u32string digram_consonants;  // C_k
    std::u32string digram_vowels;      // V_l
    std::vector<std::pair<char32_t, CodePoint>> mapping;  // phi, in alphabet order
    int p_num = 1, p_den = 2;
    Scheme scheme = Scheme::SubstitutionOnly;
    std::uint64_t seed = 0;

    const CodePoint* image_of(char32_t c) const {
        for (const auto& [k, v] : mapping)
            if (k == c) return &v;
        return nullptr;
    }

    bool operator==(const CipherKey&) const = default;

    void validate() const {
        clear_alphabet.validate();
        std::set<char32_t> cset(consonants.begin(), consonants.end());
        std::set<char32_t> vset(vowels.begin(), vowels.end());
        for (char32_t c : cset)
            if (vset.count(c)) throw Error("consonant and vowel inventories overlap");
        std::set<char32_t> ck(digram_consonants.begin(), digram_consonants.end());
        std::set<char32_t> vl(digram_vowels.begin(), digram_vowels.end());
        for (char32_t c : ck)
            if (!cset.count(c)) throw Error("digram consonant outside C");
        for (char32_t v : vl)
            if (!vset.count(v)) throw Error("digram vowel outside V");

        static const std::vector<std::pair<int, int>> allowed = {{2, 5}, {1, 2}, {2, 3}, {3, 4}};
        if (std::find(allowed.begin(), allowed.end(), std::make_pair(p_num, p_den)) ==
            allowed.end())
            throw Error("digram probability outside the sanctioned set");

        std::set<CodePoint> images;
        if (mapping.size() != clear_alphabet.size())
            throw Error("mapping does not cover the clear alphabet");
        for (const auto& [clear, image] : mapping) {
            if (!clear_alphabet.contains(clear)) throw Error("mapping key outside alphabet");
            if (!images.insert(image).second) throw Error("mapping is not injective");
            if (image.digram) {
                if (!ck.count(image.first) || !vl.count(image.second))
                    throw Error("digram image outside C_k x V_l");
            } else {
                const bool mono_consonant = cset.count(image.first) && !ck.count(image.first);
                const bool mono_vowel = vset.count(image.first) && !vl.count(image.first);
                if (!mono_consonant && !mono_vowel)
                    throw Error("monogram image outside the monogram pool");
                // Asserted independently: unique decodability demands that no
                // monogram image opens a digram.
                if (ck.count(image.first))
                    throw Error("monogram image collides with a digram-opening consonant");
            }
        }
    }
};

inline CipherKey generate_key(const Alphabet& clear_alphabet, std::u32string consonants,
                              std::u32string vowels, Scheme scheme, std::uint64_t seed) {
    if (consonants.empty() || vowels.empty())
        throw Error("consonant and vowel inventories must be non-empty");
    {
        std::set<char32_t> cset(consonants.begin(), consonants.end());
        for (char32_t v : vowels)
            if (cset.count(v)) throw Error("consonant and vowel inventories overlap");
    }
    const std::size_t m = consonants.size();
    const std::size_t n = vowels.size();
    const std::size_t sigma = clear_alphabet.size();

    std::size_t best_capacity = 0;
    for (std::size_t k = 0; k <= m; ++k)
        for (std::size_t l = 0; l <= n; ++l)
            best_capacity = std::max(best_capacity, k * l + (m - k) + (n - l));
    if (best_capacity < sigma)
        throw InsufficientCodePoints("no subset choice yields enough code points");

    Rng rng(seed);
    static const std::vector<std::pair<int, int>> p_choices = {{2, 5}, {1, 2}, {2, 3}, {3, 4}};
    const auto [p_num, p_den] = rng.pick(p_choices);

    CipherKey key;
    key.clear_alphabet = clear_alphabet;
    key.consonants = consonants;
    key.vowels = vowels;
    key.p_num = p_num;
    key.p_den = p_den;
    key.scheme = scheme;
    key.seed = seed;

    // Sample (C_k, V_l) until the code point pool can cover the alphabet.
    std::set<char32_t> ck, vl;
    for (;;) {
        const std::size_t k = rng.below(m + 1);
        const std::size_t l = rng.below(n + 1);
        if (k * l + (m - k) + (n - l) < sigma) continue;
        std::vector<char32_t> cs(consonants.begin(), consonants.end());
        std::vector<char32_t> vs(vowels.begin(), vowels.end());
        rng.shuffle(cs);
        rng.shuffle(vs);
        ck.clear();
        vl.clear();
        ck.insert(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(k));
        vl.insert(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(l));
        break;
    }
    for (char32_t c : consonants)
        if (ck.count(c)) key.digram_consonants.push_back(c);
    for (char32_t v : vowels)
        if (vl.count(v)) key.digram_vowels.push_back(v);

    std::vector<CodePoint> digrams;
    for (char32_t c : key.digram_consonants)
        for (char32_t v : key.digram_vowels) digrams.push_back(CodePoint::make_digram(c, v));
    std::vector<CodePoint> monograms;
    for (char32_t c : consonants)
        if (!ck.count(c)) monograms.push_back(CodePoint::monogram(c));
    for (char32_t v : vowels)
        if (!vl.count(v)) monograms.push_back(CodePoint::monogram(v));

    for (char32_t clear : clear_alphabet.characters) {
        bool want_digram = rng.bernoulli(p_num, p_den);
        // When the sampled pool is exhausted, fall back to the other one.
        if (want_digram && digrams.empty()) want_digram = false;
        if (!want_digram && monograms.empty()) want_digram = true;
        auto& pool = want_digram ? digrams : monograms;
        const std::size_t idx = rng.below(pool.size());
        key.mapping.emplace_back(clear, pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return key;
}

inline std::string encipher_segment(const CipherKey& key, std::string_view cleartext) {
    std::string source(cleartext);
    if (key.scheme == Scheme::SubstitutionWithReversal) source = reverse_sentence(source);
    std::u32string lowered = utf8::to_lower(utf8::decode(source));

    std::map<char32_t, CodePoint> phi(key.mapping.begin(), key.mapping.end());
    std::u32string out;
    for (char32_t c : lowered) {
        auto it = phi.find(c);
        if (it == phi.end()) {
            out.push_back(c);  // outside the clear alphabet: pass through
        } else {
            out += it->second.chars();
        }
    }
    return utf8::encode(out);
}

inline std::string decipher_segment(const CipherKey& key, std::string_view ciphertext) {
    std::set<char32_t> cset(key.consonants.begin(), key.consonants.end());
    std::set<char32_t> vset(key.vowels.begin(), key.vowels.end());
    std::set<char32_t> ck(key.digram_consonants.begin(), key.digram_consonants.end());
    std::set<char32_t> vl(key.digram_vowels.begin(), key.digram_vowels.end());

    std::map<std::pair<char32_t, char32_t>, char32_t> digram_inv;
    std::map<char32_t, char32_t> mono_inv;
    for (const auto& [clear, image] : key.mapping) {
        if (image.digram) {
            digram_inv[{image.first, image.second}] = clear;
        } else {
            mono_inv[image.first] = clear;
        }
    }

    std::u32string in = utf8::decode(ciphertext);
    std::u32string out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        char32_t c = in[i];
        if (ck.count(c)) {
            if (i + 1 >= in.size())
                throw MalformedCiphertext("digram-opening character at end of stream");
            char32_t v = in[i + 1];
            if (!vl.count(v))
                throw MalformedCiphertext("digram-opening character not followed by a digram vowel");
            auto it = digram_inv.find({c, v});
            if (it == digram_inv.end()) throw MalformedCiphertext("digram has no preimage");
            out.push_back(it->second);
            ++i;
        } else if (cset.count(c) || vset.count(c)) {
            auto it = mono_inv.find(c);
            if (it == mono_inv.end())
                throw MalformedCiphertext("cipher-inventory character has no preimage");
            out.push_back(it->second);
        } else {
            out.push_back(c);
        }
    }
    std::string text = utf8::encode(out);
    if (key.scheme == Scheme::SubstitutionWithReversal) text = reverse_sentence(text);
    return text;
}

// Count of distinct keys reachable by generate_key for these inventories:
// over every (C_k, V_l) choice and every p, the number of injective
// assignments from the alphabet into the resulting code point pool.
inline BigInt key_space_size(const Alphabet& clear_alphabet, const std::u32string& consonants,
                             const std::u32string& vowels) {
    if (consonants.empty() || vowels.empty())
        throw Error("consonant and vowel inventories must be non-empty");
    {
        std::set<char32_t> cset(consonants.begin(), consonants.end());
        for (char32_t v : vowels)
            if (cset.count(v)) throw Error("consonant and vowel inventories overlap");
    }
    const std::size_t m = consonants.size();
    const std::size_t n = vowels.size();
    const std::size_t s = clear_alphabet.size();

    auto binomial = [](std::size_t a, std::size_t b) {
        BigInt r = 1;
        for (std::size_t i = 0; i < b; ++i) {
            r *= static_cast<unsigned>(a - i);
            r /= static_cast<unsigned>(i + 1);
        }
        return r;
    };
    auto falling = [](std::size_t g, std::size_t count) {
        BigInt r = 1;
        for (std::size_t i = 0; i < count; ++i) r *= static_cast<unsigned>(g - i);
        return r;
    };

    BigInt total = 0;
    for (std::size_t k = 0; k <= m; ++k) {
        for (std::size_t l = 0; l <= n; ++l) {
            const std::size_t g = k * l + (m - k) + (n - l);
            if (g < s) continue;
            total += binomial(m, k) * binomial(n, l) * falling(g, s);
        }
    }
    if (total == 0) throw InsufficientCodePoints("no subset choice yields enough code points");
    return total * 4;  // four admissible values of p
}

// --- serialization ---------------------------------------------------------

using Json = nlohmann::ordered_json;

inline Json key_to_json(const CipherKey& key) {
    Json j;
    j["clear_alphabet"] = utf8::encode(key.clear_alphabet.characters);
    j["consonants"] = utf8::encode(key.consonants);
    j["vowels"] = utf8::encode(key.vowels);
    j["digram_consonants"] = utf8::encode(key.digram_consonants);
    j["digram_vowels"] = utf8::encode(key.digram_vowels);
    Json mapping = Json::array();
    for (const auto& [clear, image] : key.mapping)
        mapping.push_back(Json::array({utf8::encode(clear), utf8::encode(image.chars())}));
    j["mapping"] = std::move(mapping);
    j["p"] = std::to_string(key.p_num) + "/" + std::to_string(key.p_den);
    j["scheme"] = to_string(key.scheme);
    j["seed"] = key.seed;
    return j;
}

inline CipherKey key_from_json(const Json& j) {
    try {
        CipherKey key;
        key.clear_alphabet = Alphabet(j.at("clear_alphabet").get<std::string>());
        key.consonants = utf8::decode(j.at("consonants").get<std::string>());
        key.vowels = utf8::decode(j.at("vowels").get<std::string>());
        key.digram_consonants = utf8::decode(j.at("digram_consonants").get<std::string>());
        key.digram_vowels = utf8::decode(j.at("digram_vowels").get<std::string>());
        std::set<char32_t> ck(key.digram_consonants.begin(), key.digram_consonants.end());
        for (const auto& pair : j.at("mapping")) {
            std::u32string clear = utf8::decode(pair.at(0).get<std::string>());
            std::u32string image = utf8::decode(pair.at(1).get<std::string>());
            if (clear.size() != 1 || image.empty() || image.size() > 2)
                throw MalformedFile("malformed mapping entry");
            CodePoint cp = image.size() == 2 ? CodePoint::make_digram(image[0], image[1])
                                             : CodePoint::monogram(image[0]);
            key.mapping.emplace_back(clear[0], cp);
        }
        const std::string p = j.at("p").get<std::string>();
        const auto slash = p.find('/');
        if (slash == std::string::npos) throw MalformedFile("malformed probability");
        key.p_num = std::stoi(p.substr(0, slash));
        key.p_den = std::stoi(p.substr(slash + 1));
        key.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        key.seed = j.at("seed").get<std::uint64_t>();
        return key;
    } catch (const Json::exception& e) {
        throw MalformedFile(std::string("malformed key document: ") + e.what());
    }
}

}  // namespace conlang
