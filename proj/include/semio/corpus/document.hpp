#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "semio/detail/utf8.hpp"
#include "semio/error.hpp"

namespace semio::corpus {

enum class DocKind { plain_text, markup };

struct Document {
    std::string id;
    DocKind kind = DocKind::plain_text;
    std::string content;  // valid UTF-8, enforced at construction
};

/// Builds a document from raw bytes. Invalid UTF-8 is rejected here, at
/// load time, never silently repaired downstream.
inline Document make_document(std::string id, DocKind kind, std::string bytes) {
    try {
        detail::require_valid_utf8(bytes);
    } catch (const data_error& e) {
        throw data_error("document '" + id + "': " + e.what());
    }
    return Document{std::move(id), kind, std::move(bytes)};
}

}  // namespace semio::corpus
