#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fracspec/error.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/timegrid.hpp"

// CSV exchange: header `t,re_0,im_0,...` (or `xi,...` for spectra), one row
// per node. Numbers use shortest round-trip form via to_chars, so output is
// byte-identical across runs and independent of the locale.

namespace fracspec::csv {

inline std::string format(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw NumericFailure("csv: cannot format number");
    return {buf, end};
}

namespace detail {

inline std::string header(const char* axis, std::size_t dim) {
    std::string h = axis;
    for (std::size_t c = 0; c < dim; ++c) h += ",re_" + std::to_string(c) + ",im_" + std::to_string(c);
    return h + "\n";
}

inline void append_row(std::string& out, double axis, std::span<const Complex> row) {
    out += format(axis);
    for (const auto& v : row) {
        out += ',';
        out += format(v.real());
        out += ',';
        out += format(v.imag());
    }
    out += '\n';
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw InvalidArgument("failed writing '" + path + "'");
}

inline double parse_number(std::string_view s, std::size_t line) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument("csv: bad number '" + std::string(s) + "' on line " + std::to_string(line));
    return x;
}

}  // namespace detail

inline std::string to_string(const GridFunction& u) {
    std::string out = detail::header("t", u.dim());
    for (std::size_t k = 0; k < u.size(); ++k) detail::append_row(out, u.spec().t(k), u.row(k));
    return out;
}

inline std::string to_string(const SpectrumFunction& s) {
    std::string out = detail::header("xi", s.dim());
    for (std::size_t j = 0; j < s.size(); ++j) detail::append_row(out, s.xi(j), s.row(j));
    return out;
}

inline void write(const std::string& path, const GridFunction& u) { detail::write_file(path, to_string(u)); }
inline void write(const std::string& path, const SpectrumFunction& s) { detail::write_file(path, to_string(s)); }

/// Parse a GridFunction CSV; nodes must be uniformly spaced.
inline GridFunction parse(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("csv: empty input");
    std::size_t columns = 1;
    for (char ch : line) columns += ch == ',';
    if (line.rfind("t", 0) != 0 || columns < 3 || (columns - 1) % 2 != 0)
        throw InvalidArgument("csv: header must be t,re_0,im_0,...");
    const std::size_t dim = (columns - 1) / 2;

    std::vector<double> times;
    std::vector<Complex> values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(detail::parse_number(std::string_view(line).substr(start, comma - start), lineno));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (row.size() != columns)
            throw InvalidArgument("csv: line " + std::to_string(lineno) + " has " + std::to_string(row.size()) +
                                  " columns, expected " + std::to_string(columns));
        times.push_back(row[0]);
        for (std::size_t c = 0; c < dim; ++c) values.emplace_back(row[1 + 2 * c], row[2 + 2 * c]);
    }
    if (times.size() < 2) throw InvalidArgument("csv: need at least two rows");
    const std::size_t n = times.size();
    const double h = (times.back() - times.front()) / double(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(times[k] - (times.front() + double(k) * h)) > 1e-9 * std::max(1.0, std::abs(times[k])))
            throw InvalidArgument("csv: nodes are not uniformly spaced (line " + std::to_string(k + 2) + ")");
    return GridFunction(GridSpec(times.front(), n, h), dim, std::move(values));
}

inline GridFunction read(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot open '" + path + "'");
    return parse(f);
}

}  // namespace fracspec::csv
