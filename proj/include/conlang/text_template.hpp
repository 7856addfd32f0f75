#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "conlang/cipher.hpp"
#include "conlang/errors.hpp"

namespace conlang {

struct Span {
    enum class Kind { Literal, Encrypt };
    Kind kind;
    std::string text;

    bool operator==(const Span&) const = default;
};

// A cleartext document split on '@' delimiters into literal spans and spans
// destined for encipherment.
struct Template {
    std::vector<Span> spans;
    std::string source_id;

    bool operator==(const Template&) const = default;

    std::string serialize() const {
        std::string out;
        for (const auto& span : spans) {
            if (span.kind == Span::Kind::Encrypt) {
                out += '@';
                out += span.text;
                out += '@';
            } else {
                out += span.text;
            }
        }
        return out;
    }
};

inline Template parse_template(std::string_view raw, std::string source_id = {}) {
    if (std::count(raw.begin(), raw.end(), '@') % 2 != 0)
        throw UnbalancedDelimiters("odd number of '@' delimiters" +
                                   (source_id.empty() ? "" : " in " + source_id));
    Template tmpl;
    tmpl.source_id = std::move(source_id);
    std::size_t pos = 0;
    bool encrypt = false;
    while (pos <= raw.size()) {
        const std::size_t at = raw.find('@', pos);
        const std::size_t end = at == std::string_view::npos ? raw.size() : at;
        std::string fragment(raw.substr(pos, end - pos));
        if (encrypt && fragment.empty())
            throw EmptyEncryptSpan("adjacent '@' delimiters form an empty encrypt span");
        // Empty literal fragments carry no bytes; dropping them keeps
        // serialization lossless while matching the documented span shapes.
        if (encrypt || !fragment.empty())
            tmpl.spans.push_back({encrypt ? Span::Kind::Encrypt : Span::Kind::Literal,
                                  std::move(fragment)});
        if (at == std::string_view::npos) break;
        pos = at + 1;
        encrypt = !encrypt;
    }
    return tmpl;
}

inline std::string render(const Template& tmpl, const CipherKey& key) {
    std::string out;
    for (const auto& span : tmpl.spans) {
        if (span.kind == Span::Kind::Encrypt) {
            out += encipher_segment(key, span.text);
        } else {
            out += span.text;
        }
    }
    return out;
}

inline std::vector<std::string> extract_encrypt_spans(const Template& tmpl) {
    std::vector<std::string> spans;
    for (const auto& span : tmpl.spans)
        if (span.kind == Span::Kind::Encrypt) spans.push_back(span.text);
    return spans;
}

}  // namespace conlang
