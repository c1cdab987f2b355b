#pragma once

#include <algorithm>
#include <cctype>
#include <cstring>
#include <string>
#include <string_view>

#include "semio/corpus/document.hpp"
#include "semio/detail/utf8.hpp"
#include "semio/error.hpp"

namespace semio::corpus {

namespace markup_detail {

struct NamedEntity {
    const char* name;
    const char* utf8;
};

#include "semio/corpus/entity_table.inc"

inline const char* lookup_entity(std::string_view name) {
    const auto* end = std::end(kNamedEntities);
    const auto* it = std::lower_bound(std::begin(kNamedEntities), end, name,
                                      [](const NamedEntity& e, std::string_view v) {
                                          return std::string_view(e.name) < v;
                                      });
    if (it != end && std::string_view(it->name) == name) return it->utf8;
    return nullptr;
}

inline bool iequal_ascii(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

// case-insensitive search for `needle` (ASCII) in text starting at from
inline std::size_t ifind(std::string_view text, std::string_view needle, std::size_t from) {
    if (needle.empty() || text.size() < needle.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= text.size(); ++i)
        if (iequal_ascii(text.substr(i, needle.size()), needle)) return i;
    return std::string_view::npos;
}

// skip an ordinary tag: advance past the matching '>', honoring quoted
// attribute values; unclosed tags run to the end of input
inline std::size_t skip_tag(std::string_view text, std::size_t i) {
    char quote = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (quote != 0) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            return i + 1;
        }
    }
    return text.size();
}

// decode &name; / &#123; / &#x1f; starting at the '&'; returns the new
// position and appends to out, or returns npos when it is not an entity
inline std::size_t try_entity(std::string_view text, std::size_t i, std::string& out) {
    const std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi == i + 1 || semi - i > 34)
        return std::string_view::npos;
    const std::string_view body = text.substr(i + 1, semi - i - 1);
    if (body[0] == '#') {
        std::size_t k = 1;
        int base = 10;
        if (k < body.size() && (body[k] == 'x' || body[k] == 'X')) {
            base = 16;
            ++k;
        }
        if (k >= body.size()) return std::string_view::npos;
        char32_t cp = 0;
        for (; k < body.size(); ++k) {
            const char c = body[k];
            int digit;
            if (c >= '0' && c <= '9') digit = c - '0';
            else if (base == 16 && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
            else if (base == 16 && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
            else return std::string_view::npos;
            cp = cp * static_cast<char32_t>(base) + static_cast<char32_t>(digit);
            if (cp > 0x10FFFF) return std::string_view::npos;
        }
        if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) return std::string_view::npos;
        detail::append_utf8(out, cp);
        return semi + 1;
    }
    if (const char* value = lookup_entity(body)) {
        out += value;
        return semi + 1;
    }
    return std::string_view::npos;
}

}  // namespace markup_detail

/// Reduces tag-structured markup to its human-readable text: tags removed,
/// script/style/comment regions dropped, character entities decoded, tag
/// boundaries turned into whitespace, whitespace runs collapsed. Malformed
/// markup is recovered leniently (unclosed constructs run to the end of
/// their enclosing region); embedded NUL bytes mark binary data and are
/// rejected.
inline Document strip_markup(const Document& doc) {
    if (doc.kind != DocKind::markup)
        throw data_error("strip_markup: document '" + doc.id + "' is not markup");
    if (doc.content.find('\0') != std::string::npos)
        throw data_error("strip_markup: document '" + doc.id + "' contains binary content");

    using namespace markup_detail;
    const std::string_view text = doc.content;
    std::string raw;
    raw.reserve(text.size() / 2);

    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '<') {
            raw.push_back(' ');
            if (text.compare(i, 4, "<!--") == 0) {
                const std::size_t close = text.find("-->", i + 4);
                i = close == std::string_view::npos ? text.size() : close + 3;
            } else if (ifind(text, "<script", i) == i &&
                       (i + 7 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 7])))) {
                const std::size_t close = ifind(text, "</script", i + 7);
                i = close == std::string_view::npos ? text.size() : skip_tag(text, close);
            } else if (ifind(text, "<style", i) == i &&
                       (i + 6 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[i + 6])))) {
                const std::size_t close = ifind(text, "</style", i + 6);
                i = close == std::string_view::npos ? text.size() : skip_tag(text, close);
            } else if (i + 1 < text.size() &&
                       (std::isalpha(static_cast<unsigned char>(text[i + 1])) ||
                        text[i + 1] == '/' || text[i + 1] == '!' || text[i + 1] == '?')) {
                i = skip_tag(text, i + 1);
            } else {
                raw.back() = '<';  // literal '<' in prose
                ++i;
            }
        } else if (c == '&') {
            const std::size_t next = try_entity(text, i, raw);
            if (next == std::string_view::npos) {
                raw.push_back('&');
                ++i;
            } else {
                i = next;
            }
        } else {
            raw.push_back(c);
            ++i;
        }
    }

    // collapse ASCII whitespace runs and trim
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (const char c : raw) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return Document{doc.id, DocKind::plain_text, std::move(out)};
}

}  // namespace semio::corpus
