#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "pamflow/errors.hpp"

namespace pamflow::csv {

// ---------------------------------------------------------------------------
// Fixed-point rendering.
//
// Values are rendered from their shortest round-trip decimal form and then
// rounded to `places` decimals with ties going to the even digit. Rounding
// the decimal form (not the raw binary expansion) keeps output like
// 0.12345 -> "0.1234" and 0.12355 -> "0.1236" stable across platforms.
// ---------------------------------------------------------------------------

namespace detail {

inline void increment_decimal(std::string& digits) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] == '.') continue;
        if (digits[i] != '9') {
            ++digits[i];
            return;
        }
        digits[i] = '0';
    }
    digits.insert(digits.begin(), '1');
}

} // namespace detail

inline std::string render_fixed(double v, int places) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);

    bool neg = !s.empty() && s[0] == '-';
    if (neg) s.erase(s.begin());

    // Split shortest form into digit string + decimal point position.
    std::string digits;
    int point = 0; // digits before the decimal point
    int exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        exp10 = std::stoi(s.substr(e + 1));
        s.resize(e);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        point = static_cast<int>(dot);
        digits = s.substr(0, dot) + s.substr(dot + 1);
    } else {
        point = static_cast<int>(s.size());
        digits = s;
    }
    point += exp10;

    // Normalized fixed form: int_part "." frac_part
    std::string int_part, frac_part;
    if (point <= 0) {
        int_part = "0";
        frac_part = std::string(static_cast<std::size_t>(-point), '0') + digits;
    } else if (static_cast<std::size_t>(point) >= digits.size()) {
        int_part = digits + std::string(point - digits.size(), '0');
    } else {
        int_part = digits.substr(0, point);
        frac_part = digits.substr(point);
    }

    std::string kept = frac_part.substr(0, std::min<std::size_t>(frac_part.size(),
                                                                 places));
    std::string tail = frac_part.size() > static_cast<std::size_t>(places)
                           ? frac_part.substr(places)
                           : std::string();
    kept.resize(places, '0');

    if (!tail.empty()) {
        bool round_up;
        if (tail[0] > '5') {
            round_up = true;
        } else if (tail[0] < '5') {
            round_up = false;
        } else if (tail.find_first_not_of('0', 1) != std::string::npos) {
            round_up = true;
        } else {
            // exact half: to even
            char last = places > 0 ? kept.back() : int_part.back();
            round_up = ((last - '0') % 2) != 0;
        }
        if (round_up) {
            std::string whole = int_part + kept;
            detail::increment_decimal(whole);
            kept = whole.substr(whole.size() - places);
            int_part = whole.substr(0, whole.size() - places);
        }
    }

    std::string out = int_part;
    if (places > 0) out += "." + kept;
    if (neg && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
    return out;
}

// ---------------------------------------------------------------------------
// RFC 4180 reading/writing. Output is UTF-8, LF line endings, comma
// delimited; fields are quoted only when they contain a delimiter, quote,
// or newline.
// ---------------------------------------------------------------------------

inline bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

inline std::string quote(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += quote(fields[i]);
    }
    out += '\n';
    return out;
}

// Split one physical line into fields. `line` must not contain the
// terminating newline. Embedded newlines inside quotes are not supported
// by any of the pipeline schemas, so a lone quote mid-field is an error.
inline std::vector<std::string> split_row(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
                ++i;
                continue;
            }
            cur += c;
            ++i;
        } else if (c == '"') {
            if (!cur.empty())
                throw Error(errc::row_parse_failure,
                            "stray quote in line " + std::to_string(line_no));
            quoted = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
            ++i;
        } else {
            cur += c;
            ++i;
        }
    }
    if (quoted)
        throw Error(errc::row_parse_failure,
                    "unterminated quote in line " + std::to_string(line_no));
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string& s, std::size_t line_no, const char* field) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(errc::row_parse_failure, std::string("bad ") + field + " '" + s +
                                                 "' in line " + std::to_string(line_no));
    return v;
}

inline std::uint64_t parse_count(const std::string& s, std::size_t line_no,
                                 const char* field) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw Error(errc::row_parse_failure, std::string("bad ") + field + " '" + s +
                                                 "' in line " + std::to_string(line_no));
    return v;
}

// Read all lines of a text file, LF or CRLF separated, without the line
// terminators. A trailing newline does not produce an empty final line.
inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_failure, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

class Writer {
public:
    explicit Writer(const std::string& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw Error(errc::io_failure, "cannot open " + path + " for writing");
    }

    void row(const std::vector<std::string>& fields) { raw(join_row(fields)); }

    void raw(const std::string& text) {
        out_ << text;
        if (!out_) throw Error(errc::io_failure, "write failed: " + path_);
    }

    void close() {
        out_.close();
        if (out_.fail()) throw Error(errc::io_failure, "close failed: " + path_);
    }

private:
    std::string path_;
    std::ofstream out_;
};

} // namespace pamflow::csv
