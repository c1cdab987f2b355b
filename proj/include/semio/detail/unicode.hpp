#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>

namespace semio::detail {

struct LetterRange {
    char32_t lo, hi;
};

struct FoldEntry {
    char32_t cp;
    std::uint8_t len;
    char32_t folded[3];
};

#include "semio/detail/unicode_tables.inc"

/// Letter test over the supported scripts (Latin incl. extensions, IPA,
/// Greek, Cyrillic). Anything outside these ranges separates tokens.
inline bool is_letter(char32_t cp) {
    const auto* end = std::end(kLetterRanges);
    const auto* it = std::upper_bound(std::begin(kLetterRanges), end, cp,
                                      [](char32_t v, const LetterRange& r) { return v < r.lo; });
    return it != std::begin(kLetterRanges) && cp <= std::prev(it)->hi;
}

/// Appends the Unicode default case folding of cp (one to three code
/// points; identity when the table has no entry).
inline void fold_case_append(char32_t cp, std::u32string& out) {
    const auto* end = std::end(kFoldTable);
    const auto* it = std::lower_bound(std::begin(kFoldTable), end, cp,
                                      [](const FoldEntry& e, char32_t v) { return e.cp < v; });
    if (it != end && it->cp == cp) {
        for (std::uint8_t i = 0; i < it->len; ++i) out.push_back(it->folded[i]);
    } else {
        out.push_back(cp);
    }
}

}  // namespace semio::detail
