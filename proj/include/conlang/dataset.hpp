#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conlang/grammar.hpp"
#include "conlang/key_store.hpp"
#include "conlang/resources.hpp"
#include "conlang/text_template.hpp"

namespace conlang {

inline constexpr const char* kSystemPrompt = "You are an expert linguist and translator.";

inline constexpr const char* kCotEnding =
    "You may explain your chain of thoughts prior to producing the required translation. "
    "IMPORTANT: Do write your translation between tags in the following manner: "
    "<translation>your translation here</translation>.";

inline constexpr const char* kNoCotEnding =
    "Do not explain your chain of thoughts, instead immediately produce the required "
    "translation in a spontaneous fashion. IMPORTANT: Do write your translation between tags "
    "in the following manner: <translation>your translation here</translation>.";

struct PromptInstance {
    std::string instance_id;
    std::string base_instance_id;
    std::string partition;
    std::string direction;  // eng_to_art | art_to_eng
    std::string modality;   // W | W_IB | W_G
    bool cot = false;
    Matrix matrix = Matrix::French;
    std::string matrix_view;  // true | reversed (which published view the file belongs to)
    std::string key_ref;
    std::string system_prompt;
    std::string prompt_text;
    std::string reference;
    std::optional<std::string> ad_order_error_reference;
    std::optional<std::string> completion;  // training instances only
};

// The conlang's display name: the matrix language's own name pushed through
// the instance key, capitalized.
inline std::string conlang_name(const CipherKey& key, Matrix matrix) {
    const std::string clear = matrix == Matrix::Latin ? "latin" : "french";
    std::u32string name = utf8::decode(encipher_segment(key, clear));
    if (!name.empty()) name[0] = utf8::to_upper(name[0]);
    return utf8::encode(name);
}

struct PromptParts {
    std::string name;       // conlang display name
    std::string segment;    // text to translate, already in its surface form
    std::string reminder;   // segment repeated in the reminder block
    std::vector<std::string> dictionary_lines;
    std::optional<std::string> grammar_doc;          // W_G only
    std::optional<std::vector<std::string>> ib_lines;  // W_IB only
};

inline std::string assemble_prompt(const PromptParts& parts, const std::string& modality,
                                   const std::string& direction, bool cot) {
    if (modality == "W_G" && !parts.grammar_doc)
        throw MissingBlock("W_G prompt requires a grammar document");
    if (modality == "W_IB" && !parts.ib_lines)
        throw MissingBlock("W_IB prompt requires parallel segments");
    const bool to_art = direction == "eng_to_art";

    std::string helpers;
    if (modality == "W")
        helpers = "a few dictionary entries";
    else if (modality == "W_IB")
        helpers = "a few parallel segments and dictionary entries";
    else
        helpers = "a few dictionary entries and excerpts from a grammar book";

    std::string p = parts.name + " is a recently devised conlang. You are to translate the ";
    p += to_art ? "following English segment into " + parts.name
                : "following " + parts.name + " text segment into English";
    p += " with the help of " + helpers + ".\n\n";
    p += "Here is the text segment you must translate:\n" + parts.segment + "\n\n";

    if (to_art) {
        p += "Here are a few dictionary entries that may be of use to you; note that each entry "
             "follows the format: English lemma : " +
             parts.name + " equivalent (grammatical gender and/or part of speech).\n";
    } else {
        p += "And here are a few dictionary entries that may be of use to you; note that each "
             "entry follows the format: lemma (grammatical gender and/or part of speech) : "
             "English equivalent.\n";
    }
    for (const auto& line : parts.dictionary_lines) p += line + "\n";
    p += "\n";

    if (modality == "W_IB") {
        p += "Here are a few parallel segments that may be of use to you; note that each line "
             "follows the format: " +
             parts.name + " segment 'English translation'.\n";
        p += "Beginning of " + parts.name + " / English parallel segments\n\n";
        for (const auto& line : *parts.ib_lines) p += line + "\n";
        p += "\nEnd of " + parts.name + " / English parallel segments\n";
        p += "\n";
    } else if (modality == "W_G") {
        p += "And here are relevant excerpts from a grammar book: \n\n";
        p += "Beginning of " + parts.name + " Grammar Book Excerpts\n\n";
        p += *parts.grammar_doc;
        p += "\nEnd of " + parts.name + " Grammar Book Excerpts\n";
        p += "\n";
    }

    if (to_art) {
        p += "A reminder that the English sentence you must translate into " + parts.name +
             " is:\n" + parts.reminder + "\n\n";
    } else {
        p += "A reminder that the " + parts.name +
             " sentence you must translate into English is:\n" + parts.reminder + "\n\n";
    }
    p += cot ? kCotEnding : kNoCotEnding;
    return p;
}

namespace detail {

inline std::string dictionary_line(const ResourcePack& pack, Matrix matrix,
                                   const std::string& lemma, const CipherKey& key,
                                   const std::string& direction) {
    const auto& entry = pack.lookup(matrix, lemma);
    const std::string art = render(parse_template(entry.conlang_template), key);
    if (direction == "eng_to_art")
        return entry.english_lemma + " : " + art + " (" + entry.info + ")";
    return art + " (" + entry.info + "): " + entry.english_lemma;
}

inline std::vector<std::string> ib_lines_for(const GrammarExcerpt& excerpt,
                                             const CipherKey& key) {
    std::vector<std::string> lines;
    for (const auto& ib : extract_incidental_bitexts(excerpt))
        lines.push_back(render(parse_template(ib.conlang_template), key) + " '" + ib.english +
                        "'");
    return lines;
}

}  // namespace detail

// Deterministic matrix assignment: the first half of every French partition
// renders under true French, the second half under reversed French.
inline Matrix matrix_for_base(const std::string& partition, std::size_t index_in_partition,
                              std::size_t partition_size) {
    if (is_latin_partition(partition)) return Matrix::Latin;
    return index_in_partition < partition_size / 2 ? Matrix::French : Matrix::ReversedFrench;
}

inline std::vector<KeyRecord> make_test_key_records(const ResourcePack& pack,
                                                    std::uint64_t master_seed) {
    std::map<std::string, std::vector<const BitextEntry*>> by_partition;
    for (const auto& b : pack.bitexts) by_partition[b.partition].push_back(&b);
    std::vector<KeyRecord> records;
    std::set<std::string> seen;
    for (const auto& [partition, entries] : by_partition) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const Matrix matrix = matrix_for_base(partition, i, entries.size());
            if (!seen.insert(entries[i]->id).second)
                throw DuplicateId("duplicate base instance id: " + entries[i]->id);
            KeyInventory inv{pack.inventory_for(matrix).clear_alphabet,
                             pack.inventory_for(matrix).consonants,
                             pack.inventory_for(matrix).vowels};
            records.push_back(
                make_key_record(inv, entries[i]->id, matrix, Purpose::Test, master_seed));
        }
    }
    return records;
}

inline const std::vector<std::string>& modalities() {
    static const std::vector<std::string> m = {"W", "W_IB", "W_G"};
    return m;
}

inline const std::vector<std::string>& directions() {
    static const std::vector<std::string> d = {"eng_to_art", "art_to_eng"};
    return d;
}

// Enciphers the '@' spans of a whole cleartext document and swaps the
// {{name}} placeholder for the conlang's display name.
inline std::string encipher_document(const std::string& clear_doc, const CipherKey& key,
                                     const std::string& name) {
    std::string rendered = render(parse_template(clear_doc), key);
    std::string out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t at = rendered.find("{{name}}", pos);
        if (at == std::string::npos) {
            out += rendered.substr(pos);
            break;
        }
        out += rendered.substr(pos, at - pos);
        out += name;
        pos = at + 8;
    }
    return out;
}

// Expands every base bitext into the full contrastive grid: 3 modalities x
// 2 directions x 2 CoT settings x 2 matrix views, under one shared key.
inline std::vector<PromptInstance> build_test_set(const ResourcePack& pack,
                                                  const KeyStore& keys) {
    std::map<std::string, std::vector<const BitextEntry*>> by_partition;
    for (const auto& b : pack.bitexts) by_partition[b.partition].push_back(&b);
    const std::size_t per_partition = by_partition.empty() ? 0 : by_partition.begin()->second.size();
    for (const auto& [partition, entries] : by_partition)
        if (entries.size() != per_partition)
            throw CountMismatch("partition " + partition + " has " +
                                std::to_string(entries.size()) + " bitexts, expected " +
                                std::to_string(per_partition));

    // Per-matrix cleartext grammar renderings are fixed for the test set.
    std::map<std::string, std::string> grammar_clear;
    for (Matrix m : {Matrix::French, Matrix::ReversedFrench, Matrix::Latin})
        grammar_clear[to_string(m)] = canonical_grammar_rendering(pack.grammar_for(m));

    std::vector<PromptInstance> instances;
    instances.reserve(per_partition * by_partition.size() * 24);
    for (const auto& [partition, entries] : by_partition) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const BitextEntry& bitext = *entries[i];
            const KeyRecord& key_rec = keys.get(bitext.id);
            const Matrix matrix = key_rec.matrix;
            const CipherKey& key = key_rec.key;
            const std::string name = conlang_name(key, matrix);

            const std::string art_surface = render(parse_template(bitext.conlang_side_template), key);
            const std::string eng_surface = bitext.english_side;
            const std::string eng_reference = utf8::to_lower_utf8(bitext.english_side);
            const std::string grammar_doc =
                encipher_document(grammar_clear[to_string(matrix)], key, name);
            const auto ib_lines = detail::ib_lines_for(pack.grammar_for(matrix), key);

            std::optional<std::string> ad_order_rendered;
            if (bitext.ad_order_error_reference)
                ad_order_rendered = render(parse_template(*bitext.ad_order_error_reference), key);

            for (const auto& direction : directions()) {
                const bool to_art = direction == "eng_to_art";
                std::vector<std::string> dict_lines;
                for (const auto& lemma : bitext.lemmas)
                    dict_lines.push_back(
                        detail::dictionary_line(pack, matrix, lemma, key, direction));

                for (const auto& modality : modalities()) {
                    for (bool cot : {false, true}) {
                        PromptParts parts;
                        parts.name = name;
                        parts.segment = to_art ? eng_surface : art_surface;
                        parts.reminder = parts.segment;
                        parts.dictionary_lines = dict_lines;
                        if (modality == "W_G") parts.grammar_doc = grammar_doc;
                        if (modality == "W_IB") parts.ib_lines = ib_lines;
                        const std::string prompt =
                            assemble_prompt(parts, modality, direction, cot);

                        for (const char* view : {"true", "reversed"}) {
                            PromptInstance inst;
                            inst.base_instance_id = bitext.id;
                            inst.partition = partition;
                            inst.direction = direction;
                            inst.modality = modality;
                            inst.cot = cot;
                            inst.matrix = matrix;
                            inst.matrix_view = view;
                            inst.key_ref = key_rec.instance_id;
                            inst.system_prompt = kSystemPrompt;
                            inst.prompt_text = prompt;
                            inst.reference = to_art ? art_surface : eng_reference;
                            if (to_art && ad_order_rendered)
                                inst.ad_order_error_reference = ad_order_rendered;
                            inst.instance_id = bitext.id + ":" + modality + ":" + direction +
                                               ":" + (cot ? "cot" : "nocot") + ":" + view;
                            instances.push_back(std::move(inst));
                        }
                    }
                }
            }
        }
    }
    return instances;
}

// Training instances: fresh key each, varied grammar, 1:10 direction and
// 1:10 spontaneous:CoT striping, French and reversed French alternating.
inline std::vector<PromptInstance> build_training_course(const ResourcePack& pack,
                                                         const CourseSpec& spec,
                                                         std::uint64_t master_seed) {
    for (const auto& p : spec.partitions) {
        if (is_latin_partition(p))
            throw InsufficientResources("Latin partitions are excluded from training: " + p);
    }
    std::map<std::string, std::vector<const BitextEntry*>> by_partition;
    for (const auto& b : pack.bitexts) by_partition[b.partition].push_back(&b);
    for (const auto& p : spec.partitions)
        if (by_partition.find(p) == by_partition.end() || by_partition[p].empty())
            throw InsufficientResources("no bitexts for training partition " + p);

    std::vector<PromptInstance> instances;
    instances.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        const std::string& partition = spec.partitions[i % spec.partitions.size()];
        const auto& pool = by_partition[partition];
        const BitextEntry& bitext = *pool[(i / spec.partitions.size()) % pool.size()];
        const Matrix matrix = i % 2 == 0 ? Matrix::French : Matrix::ReversedFrench;
        const std::string instance_id = spec.name + "-" + std::to_string(i);

        KeyInventory inv{pack.inventory_for(matrix).clear_alphabet,
                         pack.inventory_for(matrix).consonants,
                         pack.inventory_for(matrix).vowels};
        const KeyRecord key_rec =
            make_key_record(inv, instance_id, matrix, Purpose::Train, master_seed);
        const CipherKey& key = key_rec.key;
        const std::string name = conlang_name(key, matrix);

        // every 11th instance takes the minority value, phased apart so the
        // two stripes do not coincide
        const bool to_art = i % 11 != 10;
        const bool cot = (i + 5) % 11 != 10;
        const std::string direction = to_art ? "eng_to_art" : "art_to_eng";

        const std::string art_surface = render(parse_template(bitext.conlang_side_template), key);
        const std::string varied_clear = vary_grammar_excerpt(
            pack.grammar_for(matrix), derive_seed(master_seed, instance_id));
        const std::string grammar_doc = encipher_document(varied_clear, key, name);

        std::vector<std::string> dict_lines;
        for (const auto& lemma : bitext.lemmas)
            dict_lines.push_back(detail::dictionary_line(pack, matrix, lemma, key, direction));

        PromptParts parts;
        parts.name = name;
        parts.segment = to_art ? bitext.english_side : art_surface;
        parts.reminder = parts.segment;
        parts.dictionary_lines = dict_lines;
        parts.grammar_doc = grammar_doc;

        PromptInstance inst;
        inst.instance_id = instance_id;
        inst.base_instance_id = bitext.id;
        inst.partition = partition;
        inst.direction = direction;
        inst.modality = "W_G";
        inst.cot = cot;
        inst.matrix = matrix;
        inst.matrix_view = matrix == Matrix::French ? "true" : "reversed";
        inst.key_ref = instance_id;
        inst.system_prompt = kSystemPrompt;
        inst.prompt_text = assemble_prompt(parts, "W_G", direction, cot);
        inst.reference = to_art ? art_surface : utf8::to_lower_utf8(bitext.english_side);
        if (to_art && bitext.ad_order_error_reference)
            inst.ad_order_error_reference =
                render(parse_template(*bitext.ad_order_error_reference), key);

        if (cot) {
            std::string tmpl = to_art ? pack.cot_templates.eng_to_art
                                      : pack.cot_templates.art_to_eng;
            auto fill = [](std::string text, const std::string& token, const std::string& value) {
                std::size_t pos = 0;
                while ((pos = text.find(token, pos)) != std::string::npos) {
                    text.replace(pos, token.size(), value);
                    pos += value.size();
                }
                return text;
            };
            tmpl = fill(tmpl, "{{eng}}", bitext.english_side);
            tmpl = fill(tmpl, "{{art}}", bitext.conlang_side_template);
            inst.completion = encipher_document(tmpl, key, name);
        } else {
            inst.completion = "<translation>" + inst.reference + "</translation>";
        }
        instances.push_back(std::move(inst));
    }
    return instances;
}

inline Json prompt_instance_to_json(const PromptInstance& inst) {
    Json j;
    j["instance_id"] = inst.instance_id;
    j["base_instance_id"] = inst.base_instance_id;
    j["partition"] = inst.partition;
    j["direction"] = inst.direction;
    j["modality"] = inst.modality;
    j["cot"] = inst.cot;
    j["matrix"] = to_string(inst.matrix);
    j["matrix_view"] = inst.matrix_view;
    j["system_prompt"] = inst.system_prompt;
    j["prompt"] = inst.prompt_text;
    j["reference"] = inst.reference;
    if (inst.ad_order_error_reference)
        j["ad_order_error_reference"] = *inst.ad_order_error_reference;
    else
        j["ad_order_error_reference"] = nullptr;
    j["key_ref"] = inst.key_ref;
    if (inst.completion) j["completion"] = *inst.completion;
    return j;
}

inline void write_dataset(const std::string& path, const std::vector<PromptInstance>& instances) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open dataset for writing: " + path);
    for (const auto& inst : instances) out << prompt_instance_to_json(inst).dump() << '\n';
    out.flush();
    if (!out) throw IoFailure("dataset write failed: " + path);
}

// One file per (modality, direction, cot, matrix_view) combination: the 24
// contrastive dataset versions.
inline std::vector<std::string> write_test_set_files(const std::string& dir,
                                                     const std::vector<PromptInstance>& instances) {
    std::map<std::string, std::vector<const PromptInstance*>> groups;
    for (const auto& inst : instances) {
        const std::string file = "testset_" + inst.modality + "_" + inst.direction + "_" +
                                 (inst.cot ? "cot" : "nocot") + "_" + inst.matrix_view + ".jsonl";
        groups[file].push_back(&inst);
    }
    std::vector<std::string> paths;
    for (const auto& [file, group] : groups) {
        const std::string path = dir + "/" + file;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoFailure("cannot open dataset for writing: " + path);
        for (const auto* inst : group) out << prompt_instance_to_json(*inst).dump() << '\n';
        out.flush();
        if (!out) throw IoFailure("dataset write failed: " + path);
        paths.push_back(path);
    }
    return paths;
}

}  // namespace conlang
