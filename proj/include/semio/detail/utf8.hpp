#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "semio/error.hpp"

namespace semio::detail {

/// Strict UTF-8 decoder: rejects overlong forms, surrogates, values beyond
/// U+10FFFF and truncated sequences. Decoding failures are reported, never
/// repaired.
class Utf8Decoder {
public:
    explicit Utf8Decoder(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    std::size_t position() const { return pos_; }

    char32_t next() {
        const auto fail = [this](const char* why) {
            throw data_error(std::string("invalid UTF-8 at byte ") + std::to_string(pos_) +
                             ": " + why);
        };
        const auto b0 = static_cast<unsigned char>(text_[pos_]);
        if (b0 < 0x80) {
            ++pos_;
            return b0;
        }
        int len;
        char32_t cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            fail("stray continuation or invalid lead byte");
            return 0;
        }
        if (pos_ + static_cast<std::size_t>(len) > text_.size()) fail("truncated sequence");
        for (int i = 1; i < len; ++i) {
            const auto b = static_cast<unsigned char>(text_[pos_ + static_cast<std::size_t>(i)]);
            if ((b & 0xC0) != 0x80) fail("missing continuation byte");
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < min_for_len[len]) fail("overlong encoding");
        if (cp >= 0xD800 && cp <= 0xDFFF) fail("surrogate code point");
        if (cp > 0x10FFFF) fail("code point beyond U+10FFFF");
        pos_ += static_cast<std::size_t>(len);
        return cp;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

/// Throws data_error when `text` is not valid UTF-8.
inline void require_valid_utf8(std::string_view text) {
    Utf8Decoder dec(text);
    while (!dec.done()) dec.next();
}

}  // namespace semio::detail
