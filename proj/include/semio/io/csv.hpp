#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "semio/coordination/cor.hpp"
#include "semio/corpus/counts.hpp"
#include "semio/error.hpp"

namespace semio::io {

/// Shortest round-trip decimal form of a double (std::to_chars), so emitted
/// CSV re-reads losslessly and is byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace csv_detail {

inline std::uint64_t parse_u64(std::string_view field, std::size_t line, const char* what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw data_error(std::string("csv line ") + std::to_string(line) + ": bad " + what +
                         " '" + std::string(field) + "'");
    return v;
}

inline double parse_double(std::string_view field, std::size_t line, const char* what) {
    try {
        return std::stod(std::string(field));
    } catch (const std::exception&) {
        throw data_error(std::string("csv line ") + std::to_string(line) + ": bad " + what +
                         " '" + std::string(field) + "'");
    }
}

// splits one line at commas; no quoting, none of our fields may contain commas
inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string_view chomp(std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.remove_suffix(1);
    return line;
}

}  // namespace csv_detail

// --- frequency spectrum: "count,num_types", ascending count ---------------

inline void write_spectrum_csv(std::ostream& os, const corpus::FrequencySpectrum& s) {
    os << "count,num_types\n";
    for (const auto& [z, n] : s.entries) os << z << ',' << n << '\n';
}

inline corpus::FrequencySpectrum read_spectrum_csv(std::istream& is) {
    corpus::FrequencySpectrum s;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line) || csv_detail::chomp(line) != "count,num_types")
        throw data_error("csv line 1: expected header 'count,num_types'");
    ++lineno;
    while (std::getline(is, line)) {
        ++lineno;
        const auto trimmed = csv_detail::chomp(line);
        if (trimmed.empty()) continue;
        const auto fields = csv_detail::split(trimmed);
        if (fields.size() != 2)
            throw data_error("csv line " + std::to_string(lineno) + ": expected 2 fields");
        const auto z = csv_detail::parse_u64(fields[0], lineno, "count");
        const auto n = csv_detail::parse_u64(fields[1], lineno, "num_types");
        if (z < 1) throw data_error("csv line " + std::to_string(lineno) + ": count must be >= 1");
        if (n < 1)
            throw data_error("csv line " + std::to_string(lineno) + ": num_types must be >= 1");
        if (!s.entries.emplace(z, n).second)
            throw data_error("csv line " + std::to_string(lineno) + ": duplicate count " +
                             std::to_string(z));
    }
    return s;
}

// --- word counts: "word,count", descending count then word ----------------

inline void write_counts_csv(std::ostream& os, const corpus::TokenCounts& tc) {
    std::vector<std::pair<std::string_view, std::uint64_t>> rows(tc.counts.begin(),
                                                                 tc.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    os << "word,count\n";
    for (const auto& [word, n] : rows) os << word << ',' << n << '\n';
}

inline corpus::TokenCounts read_counts_csv(std::istream& is) {
    corpus::TokenCounts tc;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line) || csv_detail::chomp(line) != "word,count")
        throw data_error("csv line 1: expected header 'word,count'");
    ++lineno;
    while (std::getline(is, line)) {
        ++lineno;
        const auto trimmed = csv_detail::chomp(line);
        if (trimmed.empty()) continue;
        const auto fields = csv_detail::split(trimmed);
        if (fields.size() != 2)
            throw data_error("csv line " + std::to_string(lineno) + ": expected 2 fields");
        const auto n = csv_detail::parse_u64(fields[1], lineno, "count");
        tc.counts[std::string(fields[0])] = n;
        tc.total_tokens += n;
    }
    return tc;
}

// --- diffusion samples: single column "z" ----------------------------------

inline void write_samples_csv(std::ostream& os, std::span<const double> samples) {
    os << "z\n";
    for (const double z : samples) os << format_double(z) << '\n';
}

inline std::vector<double> read_samples_csv(std::istream& is) {
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line) || csv_detail::chomp(line) != "z")
        throw data_error("csv line 1: expected header 'z'");
    ++lineno;
    while (std::getline(is, line)) {
        ++lineno;
        const auto trimmed = csv_detail::chomp(line);
        if (trimmed.empty()) continue;
        out.push_back(csv_detail::parse_double(trimmed, lineno, "z"));
    }
    return out;
}

// --- COR series: "t,cor" with optional log column --------------------------

inline void write_cor_csv(std::ostream& os, const coordination::CorSeries& series,
                          bool with_log) {
    os << (with_log ? "t,cor,log_cor\n" : "t,cor\n");
    for (std::size_t t = 0; t < series.values.size(); ++t) {
        os << (t + 1) << ',' << format_double(series.values[t]);
        if (with_log) os << ',' << format_double(std::log(series.values[t]));
        os << '\n';
    }
}

inline coordination::CorSeries read_cor_csv(std::istream& is) {
    coordination::CorSeries series;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line))
        throw data_error("csv line 1: expected header 't,cor'");
    const auto header = csv_detail::chomp(line);
    if (header != "t,cor" && header != "t,cor,log_cor")
        throw data_error("csv line 1: expected header 't,cor'");
    ++lineno;
    while (std::getline(is, line)) {
        ++lineno;
        const auto trimmed = csv_detail::chomp(line);
        if (trimmed.empty()) continue;
        const auto fields = csv_detail::split(trimmed);
        if (fields.size() < 2)
            throw data_error("csv line " + std::to_string(lineno) + ": expected 2+ fields");
        series.values.push_back(csv_detail::parse_double(fields[1], lineno, "cor"));
    }
    return series;
}

// --- files ------------------------------------------------------------------

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

inline void write_file_bytes(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot write file '" + path + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw data_error("failed writing file '" + path + "'");
}

}  // namespace semio::io
