#pragma once

#include <string>
#include <vector>

#include "semio/corpus/document.hpp"
#include "semio/detail/unicode.hpp"
#include "semio/detail/utf8.hpp"
#include "semio/error.hpp"

namespace semio::corpus {

/// Splits plain text into word-forms: tokens are maximal runs of letters
/// (Latin, Greek, Cyrillic scripts), every other character separates, and
/// each run is lowercased by Unicode default case folding. Word-forms stay
/// otherwise unchanged: no stemming, no lemmatization.
inline std::vector<std::string> tokenize(const Document& doc) {
    if (doc.kind != DocKind::plain_text)
        throw data_error("tokenize: document '" + doc.id + "' is not plain text");

    std::vector<std::string> tokens;
    detail::Utf8Decoder dec(doc.content);
    std::u32string run;
    auto flush = [&] {
        if (run.empty()) return;
        std::string folded;
        folded.reserve(run.size() + 4);
        std::u32string tmp;
        for (const char32_t cp : run) {
            tmp.clear();
            detail::fold_case_append(cp, tmp);
            for (const char32_t f : tmp) detail::append_utf8(folded, f);
        }
        tokens.push_back(std::move(folded));
        run.clear();
    };
    while (!dec.done()) {
        const char32_t cp = dec.next();
        if (detail::is_letter(cp)) run.push_back(cp);
        else flush();
    }
    flush();
    return tokens;
}

}  // namespace semio::corpus
