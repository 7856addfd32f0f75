#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conlang/cipher.hpp"
#include "conlang/errors.hpp"
#include "conlang/key_store.hpp"
#include "conlang/text_template.hpp"

namespace conlang {

inline const std::vector<std::string>& all_partitions() {
    static const std::vector<std::string> parts = {"1",  "2m", "2f", "3",  "4",  "5m", "5f",
                                                   "6",  "7m", "7f", "8a", "8g", "9a", "9g"};
    return parts;
}

inline bool is_latin_partition(const std::string& p) {
    return p == "8a" || p == "8g" || p == "9a" || p == "9g";
}

inline bool is_adjective_partition(const std::string& p) {
    return p == "2m" || p == "2f" || p == "5m" || p == "5f" || p == "7m" || p == "7f";
}

struct DictionaryEntry {
    std::string english_lemma;
    std::string conlang_template;  // cleartext with '@' spans
    std::string pos;               // noun | adjective | verb
    std::string gender;            // masc | fem | neuter | none
    std::string category;          // A | B | C
    std::string paradigm;          // optional declension/conjugation label
    std::string info;              // parenthetical shown in dictionary lines, e.g. "masc. n."

    void validate() const {
        if (category != "A" && category != "B" && category != "C")
            throw MalformedFile("dictionary category must be A/B/C: " + english_lemma);
        if (pos != "noun" && pos != "adjective" && pos != "verb")
            throw MalformedFile("unknown part of speech: " + pos);
    }
};

struct BitextEntry {
    std::string id;
    std::string partition;
    std::string conlang_side_template;  // '@'-delimited cleartext
    std::string english_side;
    std::optional<std::string> ad_order_error_reference;  // template, adjective partitions only
    std::vector<std::string> lemmas;  // english lemmas surfaced as dictionary entries

    void validate() const {
        bool adjective = is_adjective_partition(partition);
        if (ad_order_error_reference.has_value() && !adjective)
            throw MalformedFile("ad_order_error_reference outside adjective partitions: " + id);
        parse_template(conlang_side_template, id);  // throws on malformed delimiters
    }
};

struct GrammarParagraph {
    std::vector<std::string> paraphrases;     // bank of >= 1 equivalent templates
    std::vector<std::string> list_items;      // shufflable example lines, may be empty
};

struct GrammarSubsection {
    std::string title;
    std::vector<GrammarParagraph> paragraphs;  // first stays first under variation
};

struct GrammarSection {
    std::string title;  // main section heading, e.g. NOUNS
    std::vector<GrammarSubsection> subsections;
};

struct IncidentalBitext {
    std::string conlang_template;  // '@'-delimited span, occurs verbatim in a paragraph
    std::string english;
};

struct GrammarExcerpt {
    std::vector<GrammarSection> sections;
    std::vector<IncidentalBitext> incidental_bitexts;
    std::vector<std::string> marker_symbols;  // section/table markers to draw from

    void validate() const {
        for (const auto& sec : sections)
            for (const auto& sub : sec.subsections) {
                if (sub.paragraphs.empty())
                    throw MalformedFile("empty subsection: " + sub.title);
                for (const auto& para : sub.paragraphs)
                    if (para.paraphrases.empty())
                        throw EmptyParaphraseBank("paragraph with no paraphrases in " + sub.title);
            }
        if (marker_symbols.empty()) throw MalformedFile("no marker symbols configured");
    }
};

struct CourseSpec {
    std::string name;
    std::size_t count = 0;
    std::vector<std::string> partitions;
};

struct LanguageInventory {
    Alphabet clear_alphabet;
    std::u32string consonants;
    std::u32string vowels;
};

struct CotTemplates {
    // Placeholders: {{name}}, {{eng}}, {{art}} (the '@'-delimited template).
    std::string eng_to_art;
    std::string art_to_eng;
};

struct ResourcePack {
    LanguageInventory french_inventory;
    LanguageInventory latin_inventory;
    std::vector<DictionaryEntry> french_dictionary;
    std::vector<DictionaryEntry> latin_dictionary;
    std::vector<BitextEntry> bitexts;
    GrammarExcerpt grammar_french;
    GrammarExcerpt grammar_reversed_french;
    GrammarExcerpt grammar_latin;
    CotTemplates cot_templates;
    std::vector<CourseSpec> courses;

    const LanguageInventory& inventory_for(Matrix m) const {
        return m == Matrix::Latin ? latin_inventory : french_inventory;
    }

    const std::vector<DictionaryEntry>& dictionary_for(Matrix m) const {
        return m == Matrix::Latin ? latin_dictionary : french_dictionary;
    }

    const GrammarExcerpt& grammar_for(Matrix m) const {
        switch (m) {
            case Matrix::French: return grammar_french;
            case Matrix::ReversedFrench: return grammar_reversed_french;
            case Matrix::Latin: return grammar_latin;
        }
        throw Error("unknown matrix");
    }

    const DictionaryEntry& lookup(Matrix m, const std::string& english_lemma) const {
        for (const auto& entry : dictionary_for(m))
            if (entry.english_lemma == english_lemma) return entry;
        throw MalformedFile("lemma missing from dictionary: " + english_lemma);
    }

    void validate() const {
        for (const auto& e : french_dictionary) e.validate();
        for (const auto& e : latin_dictionary) e.validate();
        std::set<std::string> ids;
        std::map<std::string, std::size_t> per_partition;
        for (const auto& b : bitexts) {
            b.validate();
            if (!ids.insert(b.id).second) throw DuplicateId("duplicate bitext id: " + b.id);
            per_partition[b.partition]++;
            for (const auto& lemma : b.lemmas)
                lookup(is_latin_partition(b.partition) ? Matrix::Latin : Matrix::French, lemma);
        }
        grammar_french.validate();
        grammar_reversed_french.validate();
        grammar_latin.validate();
        if (cot_templates.eng_to_art.empty() || cot_templates.art_to_eng.empty())
            throw MalformedFile("missing CoT demonstration templates");
    }
};

namespace detail {

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open resource file: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw MalformedFile("unparseable JSON: " + path);
    return j;
}

inline LanguageInventory inventory_from_json(const Json& j) {
    LanguageInventory inv;
    inv.clear_alphabet = Alphabet{utf8::decode(j.at("clear_alphabet").get<std::string>())};
    inv.consonants = utf8::decode(j.at("consonants").get<std::string>());
    inv.vowels = utf8::decode(j.at("vowels").get<std::string>());
    return inv;
}

inline std::vector<DictionaryEntry> dictionary_from_json(const Json& j) {
    std::vector<DictionaryEntry> entries;
    for (const auto& rec : j) {
        DictionaryEntry e;
        e.english_lemma = rec.at("english_lemma").get<std::string>();
        e.conlang_template = rec.at("conlang_template").get<std::string>();
        e.pos = rec.at("pos").get<std::string>();
        e.gender = rec.value("gender", "none");
        e.category = rec.at("category").get<std::string>();
        e.paradigm = rec.value("paradigm", "");
        e.info = rec.at("info").get<std::string>();
        entries.push_back(std::move(e));
    }
    return entries;
}

inline GrammarExcerpt grammar_from_json(const Json& j) {
    GrammarExcerpt g;
    for (const auto& sec : j.at("sections")) {
        GrammarSection section;
        section.title = sec.at("title").get<std::string>();
        for (const auto& sub : sec.at("subsections")) {
            GrammarSubsection subsection;
            subsection.title = sub.at("title").get<std::string>();
            for (const auto& para : sub.at("paragraphs")) {
                GrammarParagraph paragraph;
                for (const auto& p : para.at("paraphrases"))
                    paragraph.paraphrases.push_back(p.get<std::string>());
                if (para.contains("list_items"))
                    for (const auto& item : para.at("list_items"))
                        paragraph.list_items.push_back(item.get<std::string>());
                subsection.paragraphs.push_back(std::move(paragraph));
            }
            section.subsections.push_back(std::move(subsection));
        }
        g.sections.push_back(std::move(section));
    }
    for (const auto& ib : j.at("incidental_bitexts"))
        g.incidental_bitexts.push_back(
            {ib.at("conlang_template").get<std::string>(), ib.at("english").get<std::string>()});
    for (const auto& m : j.at("marker_symbols"))
        g.marker_symbols.push_back(m.get<std::string>());
    return g;
}

}  // namespace detail

inline ResourcePack load_resource_pack(const std::string& dir) {
    using detail::load_json_file;
    ResourcePack pack;

    Json alphabets = load_json_file(dir + "/alphabets.json");
    pack.french_inventory = detail::inventory_from_json(alphabets.at("french"));
    pack.latin_inventory = detail::inventory_from_json(alphabets.at("latin"));

    pack.french_dictionary =
        detail::dictionary_from_json(load_json_file(dir + "/dictionary_french.json"));
    pack.latin_dictionary =
        detail::dictionary_from_json(load_json_file(dir + "/dictionary_latin.json"));

    try {
        for (const auto& rec : load_json_file(dir + "/bitexts.json")) {
            BitextEntry b;
            b.id = rec.at("id").get<std::string>();
            b.partition = rec.at("partition").get<std::string>();
            b.conlang_side_template = rec.at("conlang_side_template").get<std::string>();
            b.english_side = rec.at("english_side").get<std::string>();
            if (rec.contains("ad_order_error_reference") &&
                !rec.at("ad_order_error_reference").is_null())
                b.ad_order_error_reference = rec.at("ad_order_error_reference").get<std::string>();
            for (const auto& lemma : rec.at("lemmas")) b.lemmas.push_back(lemma.get<std::string>());
            pack.bitexts.push_back(std::move(b));
        }

        pack.grammar_french = detail::grammar_from_json(load_json_file(dir + "/grammar_french.json"));
        pack.grammar_reversed_french =
            detail::grammar_from_json(load_json_file(dir + "/grammar_reversed_french.json"));
        pack.grammar_latin = detail::grammar_from_json(load_json_file(dir + "/grammar_latin.json"));

        Json cot = load_json_file(dir + "/cot_templates.json");
        pack.cot_templates.eng_to_art = cot.at("eng_to_art").get<std::string>();
        pack.cot_templates.art_to_eng = cot.at("art_to_eng").get<std::string>();

        for (const auto& rec : load_json_file(dir + "/course_specs.json")) {
            CourseSpec spec;
            spec.name = rec.at("name").get<std::string>();
            spec.count = rec.at("count").get<std::size_t>();
            for (const auto& p : rec.at("partitions")) spec.partitions.push_back(p.get<std::string>());
            pack.courses.push_back(std::move(spec));
        }
    } catch (const Json::exception& e) {
        throw MalformedFile(std::string("bad resource pack field: ") + e.what());
    }

    pack.validate();
    return pack;
}

}  // namespace conlang
