#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pamflow/audio_io.hpp"
#include "pamflow/csv.hpp"
#include "pamflow/errors.hpp"
#include "pamflow/time.hpp"

namespace pamflow::inventory {

enum class FileStatus { ok, unreadable, unparseable_name };

inline const char* to_string(FileStatus s) {
    switch (s) {
    case FileStatus::ok: return "OK";
    case FileStatus::unreadable: return "UNREADABLE";
    case FileStatus::unparseable_name: return "UNPARSEABLE_NAME";
    }
    return "?";
}

// One discovered audio file. Paths are relative to the scanned target
// directory so inventories stay relocatable; durations are kept at
// millisecond precision so the CSV form round-trips exactly.
struct FileRecord {
    std::string path; // relative, '/'-separated
    std::uint64_t size_bytes = 0;
    std::optional<std::string> site;
    std::optional<std::string> station;
    std::optional<Timestamp> start_time;
    double duration = 0.0; // seconds
    FileStatus status = FileStatus::ok;

    bool operator==(const FileRecord&) const = default;
};

struct Inventory {
    std::vector<FileRecord> records; // strictly sorted by path
    std::string target_dir;
    Timestamp created_at{};

    double total_duration() const {
        double sum = 0.0;
        for (const auto& r : records) sum += r.duration;
        return sum;
    }
};

struct ParsedName {
    std::string site;
    std::optional<std::string> station;
    Timestamp start_time;
};

// Filename convention: <site[-station]>_<YYYYMMDD>_<HHMMSS>.<ext>. The
// prefix splits into site/station at the first hyphen. Returns nullopt
// for anything that does not match or is not a valid calendar time.
inline std::optional<ParsedName> parse_filename(const std::string& name) {
    auto dot = name.rfind('.');
    std::string stem = dot == std::string::npos ? name : name.substr(0, dot);

    auto u2 = stem.rfind('_');
    if (u2 == std::string::npos || u2 == 0) return std::nullopt;
    auto u1 = stem.rfind('_', u2 - 1);
    if (u1 == std::string::npos || u1 == 0) return std::nullopt;

    std::string prefix = stem.substr(0, u1);
    std::string date = stem.substr(u1 + 1, u2 - u1 - 1);
    std::string time = stem.substr(u2 + 1);

    auto ts = parse_compact_timestamp(date, time);
    if (!ts || prefix.empty()) return std::nullopt;

    ParsedName parsed;
    parsed.start_time = *ts;
    if (auto hyphen = prefix.find('-'); hyphen != std::string::npos) {
        if (hyphen == 0 || hyphen + 1 == prefix.size()) return std::nullopt;
        parsed.site = prefix.substr(0, hyphen);
        parsed.station = prefix.substr(hyphen + 1);
    } else {
        parsed.site = prefix;
    }
    return parsed;
}

// Recursively discover files whose lowercased extension is in
// `extensions` (extension names without the dot, e.g. {"wav"}). The
// result is a pure function of tree contents: records are sorted by
// relative path regardless of filesystem enumeration order.
inline Inventory scan(const std::filesystem::path& target_dir,
                      const std::set<std::string>& extensions) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(target_dir, ec))
        throw Error(errc::target_missing, target_dir.string() + " is not a directory");

    Inventory inv;
    inv.target_dir = target_dir.string();
    inv.created_at = std::chrono::time_point_cast<std::chrono::seconds>(
        std::chrono::system_clock::now());

    for (auto it = fs::recursive_directory_iterator(
             target_dir, fs::directory_options::skip_permission_denied);
         it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file(ec)) continue;
        const fs::path& p = it->path();
        std::string ext = p.extension().string();
        if (ext.empty()) continue;
        ext.erase(ext.begin()); // drop the dot
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!extensions.count(ext)) continue;

        FileRecord rec;
        rec.path = fs::relative(p, target_dir).generic_string();
        rec.size_bytes = it->file_size(ec);
        if (ec) rec.size_bytes = 0;

        if (auto parsed = parse_filename(p.filename().string())) {
            rec.site = parsed->site;
            rec.station = parsed->station;
            rec.start_time = parsed->start_time;
        } else {
            rec.status = FileStatus::unparseable_name;
        }

        try {
            auto meta = audio::read_metadata(p);
            rec.duration = std::round(meta.duration * 1000.0) / 1000.0;
            if (rec.duration <= 0.0) rec.status = FileStatus::unreadable; // empty payload
        } catch (const Error&) {
            rec.status = FileStatus::unreadable;
        }
        if (rec.status == FileStatus::unreadable) {
            rec.site.reset();
            rec.station.reset();
            rec.start_time.reset();
            rec.duration = 0.0;
        }
        inv.records.push_back(std::move(rec));
    }

    std::sort(inv.records.begin(), inv.records.end(),
              [](const FileRecord& a, const FileRecord& b) { return a.path < b.path; });
    return inv;
}

inline const char* kInventoryHeader = "path,size_bytes,site,station,start_time,duration_s,status";
inline const char* kUnknownField = "UNKNOWN";

// Deterministic CSV: rewriting the same inventory yields byte-identical
// output (created_at is deliberately not persisted).
inline void write_inventory(const Inventory& inv, const std::filesystem::path& out_path) {
    csv::Writer w(out_path.string());
    w.raw(std::string(kInventoryHeader) + "\n");
    for (const auto& r : inv.records) {
        w.row({r.path, std::to_string(r.size_bytes), r.site.value_or(kUnknownField),
               r.station.value_or(kUnknownField),
               r.start_time ? format_iso(*r.start_time) : kUnknownField,
               csv::render_fixed(r.duration, 3), to_string(r.status)});
    }
    w.close();
}

inline Inventory read_inventory(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    if (lines.empty() || lines[0] != kInventoryHeader)
        throw Error(errc::schema_mismatch, "expected inventory header in " + path.string());

    Inventory inv;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto f = csv::split_row(lines[i], line_no);
        if (f.size() != 7)
            throw Error(errc::row_parse_failure,
                        "expected 7 fields in line " + std::to_string(line_no));
        if (f[0].find_first_of(",\"") != std::string::npos)
            throw Error(errc::row_parse_failure,
                        "path contains reserved characters in line " + std::to_string(line_no));
        FileRecord rec;
        rec.path = f[0];
        rec.size_bytes = csv::parse_count(f[1], line_no, "size_bytes");
        if (f[2] != kUnknownField) rec.site = f[2];
        if (f[3] != kUnknownField) rec.station = f[3];
        if (f[4] != kUnknownField) {
            auto ts = parse_iso(f[4]);
            if (!ts)
                throw Error(errc::row_parse_failure,
                            "bad start_time in line " + std::to_string(line_no));
            rec.start_time = ts;
        }
        rec.duration = csv::parse_double(f[5], line_no, "duration_s");
        if (f[6] == "OK") rec.status = FileStatus::ok;
        else if (f[6] == "UNREADABLE") rec.status = FileStatus::unreadable;
        else if (f[6] == "UNPARSEABLE_NAME") rec.status = FileStatus::unparseable_name;
        else
            throw Error(errc::row_parse_failure, "bad status in line " + std::to_string(line_no));
        inv.records.push_back(std::move(rec));
    }
    return inv;
}

} // namespace pamflow::inventory
