#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "semio/corpus/counts.hpp"
#include "semio/corpus/document.hpp"
#include "semio/corpus/markup.hpp"
#include "semio/corpus/tokenize.hpp"
#include "semio/detail/rng.hpp"

using namespace semio;
using corpus::DocKind;
using corpus::Document;

namespace {

Document text_doc(std::string s) { return corpus::make_document("t", DocKind::plain_text, std::move(s)); }
Document html_doc(std::string s) { return corpus::make_document("h", DocKind::markup, std::move(s)); }

}  // namespace

TEST_CASE("documents reject invalid utf-8 at load", "[corpus]") {
    REQUIRE_THROWS_AS(corpus::make_document("x", DocKind::plain_text, "ok\xC3("), data_error);
    REQUIRE_THROWS_AS(corpus::make_document("x", DocKind::plain_text, "\xED\xA0\x80"),
                      data_error);  // surrogate
    REQUIRE_THROWS_AS(corpus::make_document("x", DocKind::plain_text, "\xC0\xAF"),
                      data_error);  // overlong
    REQUIRE_NOTHROW(corpus::make_document("x", DocKind::plain_text, "héllo мир"));
}

TEST_CASE("markup stripping hand examples", "[corpus][markup]") {
    REQUIRE(corpus::strip_markup(html_doc("<p>Hello <b>world</b></p>")).content ==
            "Hello world");
    REQUIRE(corpus::strip_markup(html_doc("<script>var x=1;</script>text")).content == "text");
    REQUIRE(corpus::strip_markup(html_doc("A&amp;B")).content == "A&B");
}

TEST_CASE("markup stripping removes technical regions", "[corpus][markup]") {
    const auto out = corpus::strip_markup(html_doc(
        "<!DOCTYPE html><html><head><style>p { color: red; }</style>"
        "<SCRIPT type=\"x\">if (a > b) { alert('<b>'); }</SCRIPT></head>"
        "<body><!-- hidden -->visible<br/>text</body></html>"));
    REQUIRE(out.content == "visible text");
    REQUIRE(out.kind == DocKind::plain_text);
}

TEST_CASE("markup stripping is lenient about malformed input", "[corpus][markup]") {
    REQUIRE(corpus::strip_markup(html_doc("<p>open <b>bold")).content == "open bold");
    REQUIRE(corpus::strip_markup(html_doc("<script>never closed")).content == "");
    REQUIRE(corpus::strip_markup(html_doc("<p class=\"a>b\">quoted</p>")).content == "quoted");
    REQUIRE(corpus::strip_markup(html_doc("a < b and c &notanentity; d")).content ==
            "a < b and c &notanentity; d");
}

TEST_CASE("markup entities decode to unicode values", "[corpus][markup]") {
    REQUIRE(corpus::strip_markup(html_doc("&lt;tag&gt; &quot;q&quot;")).content ==
            "<tag> \"q\"");
    REQUIRE(corpus::strip_markup(html_doc("caf&eacute; &#233; &#xE9;")).content ==
            "caf\xC3\xA9 \xC3\xA9 \xC3\xA9");
    // nbsp decodes to U+00A0 (a separator later, but preserved here)
    REQUIRE(corpus::strip_markup(html_doc("a&nbsp;b")).content == "a\xC2\xA0""b");
}

TEST_CASE("markup stripping rejects binary and non-markup input", "[corpus][markup]") {
    REQUIRE_THROWS_AS(corpus::strip_markup(html_doc(std::string("ab\0cd", 5))), data_error);
    REQUIRE_THROWS_AS(corpus::strip_markup(text_doc("plain")), data_error);
}

TEST_CASE("tokenize hand examples", "[corpus][tokenize]") {
    REQUIRE(corpus::tokenize(text_doc("Hello, world—hello!")) ==
            std::vector<std::string>{"hello", "world", "hello"});
    REQUIRE(corpus::tokenize(text_doc("Он сказал, он")) ==
            std::vector<std::string>{"он", "сказал", "он"});
    REQUIRE(corpus::tokenize(text_doc("")).empty());
}

TEST_CASE("tokenize discards digits and apostrophes", "[corpus][tokenize]") {
    REQUIRE(corpus::tokenize(text_doc("don't stop 42 times")) ==
            std::vector<std::string>{"don", "t", "stop", "times"});
    REQUIRE(corpus::tokenize(text_doc("well-known")) ==
            std::vector<std::string>{"well", "known"});
}

TEST_CASE("tokenize applies full case folding", "[corpus][tokenize]") {
    REQUIRE(corpus::tokenize(text_doc("STRASSE Straße")) ==
            std::vector<std::string>{"strasse", "strasse"});
    REQUIRE(corpus::tokenize(text_doc("ΣΟΦΟΣ")) == std::vector<std::string>{"σοφοσ"});
    REQUIRE(corpus::tokenize(text_doc("МОСКВА москва")) ==
            std::vector<std::string>{"москва", "москва"});
}

TEST_CASE("strip then tokenize equals tokens of the text node", "[corpus][property]") {
    const std::string inner = "Quick brown фокс jumps";
    const auto direct = corpus::tokenize(text_doc(inner));
    const auto piped = corpus::tokenize(
        corpus::strip_markup(html_doc("<div><p class='x'>" + inner + "</p></div>")));
    REQUIRE(piped == direct);
}

TEST_CASE("count and spectrum hand examples", "[corpus][counts]") {
    const std::vector<std::string> toks{"hello", "world", "hello"};
    const auto tc = corpus::count(toks);
    REQUIRE(tc.total_tokens == 3);
    REQUIRE(tc.counts.at("hello") == 2);
    REQUIRE(tc.counts.at("world") == 1);
    REQUIRE(tc.vocabulary() == 2);

    const auto empty = corpus::count(std::vector<std::string>{});
    REQUIRE(empty.total_tokens == 0);
    REQUIRE(empty.counts.empty());
    REQUIRE(corpus::spectrum(empty).entries.empty());

    const auto s = corpus::spectrum(tc);
    REQUIRE(s.entries.size() == 2);
    REQUIRE(s.entries.at(1) == 1);
    REQUIRE(s.entries.at(2) == 1);

    corpus::TokenCounts abc;
    abc.counts = {{"a", 3}, {"b", 3}, {"c", 1}};
    abc.total_tokens = 7;
    const auto s2 = corpus::spectrum(abc);
    REQUIRE(s2.entries.at(1) == 1);
    REQUIRE(s2.entries.at(3) == 2);
    REQUIRE(s2.total_tokens() == 7);
}

TEST_CASE("counting is a monoid homomorphism and spectrum sums check out",
          "[corpus][property]") {
    detail::Xoshiro256pp g(77);
    const std::vector<std::string> lexicon{"a", "b", "c", "dd", "ee", "fff", "ggg", "hh"};
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<std::string> stream;
        const std::size_t n = g.below(200);
        for (std::size_t i = 0; i < n; ++i) stream.push_back(lexicon[g.below(lexicon.size())]);
        const std::size_t cut = n == 0 ? 0 : g.below(n + 1);

        const std::vector<std::string> left(stream.begin(),
                                            stream.begin() + static_cast<std::ptrdiff_t>(cut));
        const std::vector<std::string> right(stream.begin() + static_cast<std::ptrdiff_t>(cut),
                                             stream.end());
        const auto whole = corpus::count(stream);
        const auto merged = corpus::merge(corpus::count(left), corpus::count(right));
        REQUIRE(merged.counts == whole.counts);
        REQUIRE(merged.total_tokens == whole.total_tokens);

        const auto s = corpus::spectrum(whole);
        REQUIRE(s.total_types() == whole.vocabulary());
        REQUIRE(s.total_tokens() == whole.total_tokens);
    }
}

TEST_CASE("pipeline is deterministic", "[corpus]") {
    const std::string bytes = "<p>Same &amp; same о ДВАЖДЫ</p>";
    const auto once = corpus::tokenize(corpus::strip_markup(html_doc(bytes)));
    const auto twice = corpus::tokenize(corpus::strip_markup(html_doc(bytes)));
    REQUIRE(once == twice);
}
