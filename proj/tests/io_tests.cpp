#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "semio/detail/hash.hpp"
#include "semio/io/csv.hpp"
#include "semio/io/json_io.hpp"

using namespace semio;

TEST_CASE("spectrum csv round-trips and is ordered", "[io]") {
    corpus::FrequencySpectrum s;
    s.entries[7] = 2;
    s.entries[1] = 10;
    s.entries[3] = 4;
    std::ostringstream os;
    io::write_spectrum_csv(os, s);
    REQUIRE(os.str() == "count,num_types\n1,10\n3,4\n7,2\n");
    std::istringstream is(os.str());
    REQUIRE(io::read_spectrum_csv(is).entries == s.entries);
}

TEST_CASE("spectrum csv reports malformed rows with line numbers", "[io]") {
    std::istringstream bad1("count,num_types\n1,10\nxx,3\n");
    try {
        io::read_spectrum_csv(bad1);
        FAIL("expected data_error");
    } catch (const data_error& e) {
        REQUIRE(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::istringstream bad2("wrong,header\n");
    REQUIRE_THROWS_AS(io::read_spectrum_csv(bad2), data_error);
    std::istringstream bad3("count,num_types\n2,1\n2,5\n");
    REQUIRE_THROWS_AS(io::read_spectrum_csv(bad3), data_error);
    std::istringstream bad4("count,num_types\n0,5\n");
    REQUIRE_THROWS_AS(io::read_spectrum_csv(bad4), data_error);
}

TEST_CASE("counts csv sorts by count then word", "[io]") {
    corpus::TokenCounts tc;
    tc.counts = {{"b", 3}, {"a", 3}, {"zz", 10}, {"m", 1}};
    tc.total_tokens = 17;
    std::ostringstream os;
    io::write_counts_csv(os, tc);
    REQUIRE(os.str() == "word,count\nzz,10\na,3\nb,3\nm,1\n");
    std::istringstream is(os.str());
    const auto back = io::read_counts_csv(is);
    REQUIRE(back.counts == tc.counts);
    REQUIRE(back.total_tokens == tc.total_tokens);
}

TEST_CASE("samples and cor csv round-trip losslessly", "[io]") {
    const std::vector<double> samples{0.12345678901234567, 3.0, 1e-17, 2.5e300};
    std::ostringstream os;
    io::write_samples_csv(os, samples);
    std::istringstream is(os.str());
    REQUIRE(io::read_samples_csv(is) == samples);

    coordination::CorSeries series;
    series.values = {1.0 / 3.0, 2.0, 0.0};
    std::ostringstream os2;
    io::write_cor_csv(os2, series, true);
    std::istringstream is2(os2.str());
    REQUIRE(io::read_cor_csv(is2).values == series.values);
    REQUIRE(os2.str().find("log_cor") != std::string::npos);
    REQUIRE(os2.str().find("-inf") != std::string::npos);  // log of 0
}

TEST_CASE("fit report json follows the exact schema and round-trips", "[io]") {
    mixture::FitReport report{
        mixture::LomaxMixture({{0.45, {1.0, 1.2}}, {0.55, {20.0, 3.0}}})};
    report.log_likelihood = -1234.5;
    report.chi_square = 42.25;
    report.degrees_of_freedom = 17;
    report.loglog_r = 0.991;
    report.loglog_slope = 1.02;

    const auto j = io::fit_report_to_json(report);
    for (const char* key : {"components", "M", "log_likelihood", "chi_square", "dof", "r", "slope"})
        REQUIRE(j.contains(key));
    REQUIRE(j.size() == 7);
    REQUIRE(j["M"] == 2);
    REQUIRE(j["components"].size() == 2);
    REQUIRE(j["components"][0].size() == 3);

    const auto parsed = io::fit_report_from_json(j);
    REQUIRE(parsed.mixture == report.mixture);
    REQUIRE(parsed.chi_square == report.chi_square);
    REQUIRE(parsed.r == report.loglog_r);

    auto broken = j;
    broken["M"] = 3;
    REQUIRE_THROWS_AS(io::fit_report_from_json(broken), data_error);
}

TEST_CASE("sign index and sessions json round-trip", "[io]") {
    coordination::SignIndex idx;
    idx.add("k1", {"d2", "d1"});
    idx.add("k2", {"d3"});
    const auto j = io::sign_index_to_json(idx);
    REQUIRE(j["k1"] == std::vector<std::string>{"d1", "d2"});
    REQUIRE(io::sign_index_from_json(j).signs == idx.signs);

    const std::vector<coordination::Session> sessions{{"k1", "k2"}, {"k2"}};
    const auto js = io::sessions_to_json(sessions);
    REQUIRE(io::sessions_from_json(js) == sessions);

    REQUIRE_THROWS_AS(io::sign_index_from_json(io::parse_json("[1,2]", "index")), data_error);
    REQUIRE_THROWS_AS(io::parse_json("{nope", "x"), data_error);
    REQUIRE_THROWS_AS(io::sign_index_from_json(io::parse_json("{\"k\":[]}", "index")),
                      data_error);
}

TEST_CASE("fnv1a64 digests are stable", "[io]") {
    REQUIRE(detail::fnv1a64_hex("") == "cbf29ce484222325");
    REQUIRE(detail::fnv1a64_hex("a") == "af63dc4c8601ec8c");
    REQUIRE(detail::fnv1a64_hex("hello") != detail::fnv1a64_hex("hellp"));
}
