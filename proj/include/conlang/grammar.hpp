#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "conlang/resources.hpp"
#include "conlang/rng.hpp"

namespace conlang {

namespace detail {

struct GrammarChoices {
    std::string title_marker;       // frames main-section titles
    std::string subsection_marker;  // prefixes subsection titles
    std::string list_marker;        // prefixes list items
    std::vector<std::size_t> section_order;
    std::vector<std::vector<std::size_t>> subsection_orders;
    // per section, per subsection: paragraph order (first index always 0),
    // chosen paraphrase per paragraph, list item order per paragraph
    std::vector<std::vector<std::vector<std::size_t>>> paragraph_orders;
    std::vector<std::vector<std::vector<std::size_t>>> paraphrase_choices;
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> list_orders;
};

inline std::string render_grammar(const GrammarExcerpt& excerpt, const GrammarChoices& ch) {
    std::string out;
    for (std::size_t so = 0; so < ch.section_order.size(); ++so) {
        const std::size_t si = ch.section_order[so];
        const auto& section = excerpt.sections[si];
        std::string frame;
        for (int i = 0; i < 5; ++i) frame += ch.title_marker;
        out += frame + "\n" + section.title + "\n" + frame + "\n\n";
        for (std::size_t bo = 0; bo < ch.subsection_orders[si].size(); ++bo) {
            const std::size_t bi = ch.subsection_orders[si][bo];
            const auto& sub = section.subsections[bi];
            out += ch.subsection_marker + " " + sub.title + "\n";
            for (std::size_t po = 0; po < ch.paragraph_orders[si][bi].size(); ++po) {
                const std::size_t pi = ch.paragraph_orders[si][bi][po];
                const auto& para = sub.paragraphs[pi];
                out += para.paraphrases[ch.paraphrase_choices[si][bi][pi]] + "\n";
                for (std::size_t item : ch.list_orders[si][bi][pi])
                    out += ch.list_marker + " " + para.list_items[item] + "\n";
                out += "\n";
            }
        }
    }
    return out;
}

inline GrammarChoices canonical_choices(const GrammarExcerpt& excerpt) {
    GrammarChoices ch;
    ch.title_marker = "-";
    ch.subsection_marker = "*";
    ch.list_marker = "-";
    ch.section_order.resize(excerpt.sections.size());
    std::iota(ch.section_order.begin(), ch.section_order.end(), 0);
    for (const auto& section : excerpt.sections) {
        std::vector<std::size_t> subs(section.subsections.size());
        std::iota(subs.begin(), subs.end(), 0);
        ch.subsection_orders.push_back(subs);
        std::vector<std::vector<std::size_t>> paras, choices;
        std::vector<std::vector<std::vector<std::size_t>>> lists;
        for (const auto& sub : section.subsections) {
            std::vector<std::size_t> order(sub.paragraphs.size());
            std::iota(order.begin(), order.end(), 0);
            paras.push_back(order);
            choices.push_back(std::vector<std::size_t>(sub.paragraphs.size(), 0));
            std::vector<std::vector<std::size_t>> para_lists;
            for (const auto& para : sub.paragraphs) {
                std::vector<std::size_t> items(para.list_items.size());
                std::iota(items.begin(), items.end(), 0);
                para_lists.push_back(items);
            }
            lists.push_back(para_lists);
        }
        ch.paragraph_orders.push_back(paras);
        ch.paraphrase_choices.push_back(choices);
        ch.list_orders.push_back(lists);
    }
    return ch;
}

inline GrammarChoices random_choices(const GrammarExcerpt& excerpt, Rng& rng) {
    GrammarChoices ch = canonical_choices(excerpt);
    ch.title_marker = excerpt.marker_symbols[rng.below(excerpt.marker_symbols.size())];
    ch.subsection_marker = excerpt.marker_symbols[rng.below(excerpt.marker_symbols.size())];
    ch.list_marker = excerpt.marker_symbols[rng.below(excerpt.marker_symbols.size())];
    rng.shuffle(ch.section_order);
    for (std::size_t si = 0; si < excerpt.sections.size(); ++si) {
        rng.shuffle(ch.subsection_orders[si]);
        const auto& section = excerpt.sections[si];
        for (std::size_t bi = 0; bi < section.subsections.size(); ++bi) {
            const auto& sub = section.subsections[bi];
            // first paragraph stays first; the rest may reorder
            auto& order = ch.paragraph_orders[si][bi];
            if (order.size() > 2) {
                std::vector<std::size_t> tail(order.begin() + 1, order.end());
                rng.shuffle(tail);
                std::copy(tail.begin(), tail.end(), order.begin() + 1);
            }
            for (std::size_t pi = 0; pi < sub.paragraphs.size(); ++pi) {
                ch.paraphrase_choices[si][bi][pi] =
                    rng.below(sub.paragraphs[pi].paraphrases.size());
                rng.shuffle(ch.list_orders[si][bi][pi]);
            }
        }
    }
    return ch;
}

}  // namespace detail

// The fixed rendering used to build test-set prompts: paraphrase 0, source
// order, default markers. Training variations are guarded against colliding
// with this exact text.
inline std::string canonical_grammar_rendering(const GrammarExcerpt& excerpt) {
    excerpt.validate();
    return detail::render_grammar(excerpt, detail::canonical_choices(excerpt));
}

// Deterministic randomized rendering: one paraphrase per paragraph, shuffled
// example lists, shuffled section/subsection order (first paragraph kept
// first), markers drawn from the configured symbol list. Never returns the
// canonical test rendering.
inline std::string vary_grammar_excerpt(const GrammarExcerpt& excerpt, std::uint64_t seed) {
    excerpt.validate();
    const std::string canonical = canonical_grammar_rendering(excerpt);
    for (std::uint64_t nonce = 0; nonce < 64; ++nonce) {
        Rng rng(derive_seed(seed, "grammar-variation-" + std::to_string(nonce)));
        std::string text = detail::render_grammar(excerpt, detail::random_choices(excerpt, rng));
        if (text != canonical) return text;
    }
    // Degenerate excerpt (single paraphrase, single section, no lists): the
    // sole rendering is the only possible output.
    return canonical;
}

inline std::vector<IncidentalBitext> extract_incidental_bitexts(const GrammarExcerpt& excerpt) {
    return excerpt.incidental_bitexts;
}

}  // namespace conlang
