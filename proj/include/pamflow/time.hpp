#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

namespace pamflow {

// Timestamps are naive civil times (no zone): whatever clock the recorder
// was set to. Stored as seconds on the sys_days epoch.
using Timestamp = std::chrono::sys_seconds;
using CivilDate = std::chrono::year_month_day;

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline int to_int(const std::string& s, std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) v = v * 10 + (s[i] - '0');
    return v;
}

} // namespace detail

// Parse "YYYYMMDD" + "HHMMSS" into a timestamp; rejects invalid calendar
// dates (month 13, Feb 30, hour 24, ...).
inline std::optional<Timestamp> parse_compact_timestamp(const std::string& date,
                                                        const std::string& time) {
    using namespace std::chrono;
    if (date.size() != 8 || time.size() != 6) return std::nullopt;
    if (!detail::all_digits(date) || !detail::all_digits(time)) return std::nullopt;
    int y = detail::to_int(date, 0, 4);
    int mo = detail::to_int(date, 4, 2);
    int d = detail::to_int(date, 6, 2);
    int h = detail::to_int(time, 0, 2);
    int mi = detail::to_int(time, 2, 2);
    int s = detail::to_int(time, 4, 2);
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                       day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    if (h > 23 || mi > 59 || s > 59) return std::nullopt;
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

// ISO-8601 without zone designator, e.g. 2023-05-15T02:15:00.
inline std::string format_iso(Timestamp t) {
    using namespace std::chrono;
    auto dp = floor<days>(t);
    year_month_day ymd{dp};
    hh_mm_ss tod{t - dp};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ld",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()),
                  static_cast<long>(tod.hours().count()),
                  static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

inline std::optional<Timestamp> parse_iso(const std::string& s) {
    if (s.size() != 19 || s[4] != '-' || s[7] != '-' || s[10] != 'T' ||
        s[13] != ':' || s[16] != ':')
        return std::nullopt;
    std::string date = s.substr(0, 4) + s.substr(5, 2) + s.substr(8, 2);
    std::string time = s.substr(11, 2) + s.substr(14, 2) + s.substr(17, 2);
    return parse_compact_timestamp(date, time);
}

inline CivilDate date_of(Timestamp t) {
    return CivilDate{std::chrono::floor<std::chrono::days>(t)};
}

inline std::string format_date(CivilDate d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

inline std::optional<CivilDate> parse_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto t = parse_compact_timestamp(s.substr(0, 4) + s.substr(5, 2) + s.substr(8, 2),
                                     "000000");
    if (!t) return std::nullopt;
    return date_of(*t);
}

} // namespace pamflow
