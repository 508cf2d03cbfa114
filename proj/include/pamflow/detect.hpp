#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pamflow/classify.hpp"
#include "pamflow/csv.hpp"
#include "pamflow/errors.hpp"
#include "pamflow/inventory.hpp"
#include "pamflow/spectrogram.hpp"
#include "pamflow/time.hpp"

namespace pamflow::detect {

// One (clip, class) pair whose score met the class's effective threshold.
struct Detection {
    std::string class_code;
    std::string clip_id;
    std::string source; // clip stem of the parent recording
    double start = 0.0; // seconds within the source
    double score = 0.0;
    double threshold_used = 0.0;
};

// Station-day detection counts: the per-class index of vocal activity.
struct SummaryRow {
    std::string site;
    std::string station;
    CivilDate date{};
    std::string class_code;
    std::uint64_t n_detections = 0;
    std::uint64_t n_clips = 0;
};

struct ThresholdOverrides {
    std::optional<double> global;           // bare `-t V`
    std::map<std::string, double> per_code; // `-t CODE=V`; wins over global

    std::optional<double> lookup(const std::string& code) const {
        if (auto it = per_code.find(code); it != per_code.end()) return it->second;
        return global;
    }
};

// Filter raw score rows into apparent detections. A detection is emitted
// iff score >= effective threshold (override if present, else the class
// default; >= makes the boundary inclusive). Output is sorted by
// (class_code, score descending, clip_id).
inline std::vector<Detection> apply_thresholds(const std::vector<classify::ScoreRow>& rows,
                                               const std::vector<classify::DetectionClass>& classes,
                                               const ThresholdOverrides& overrides,
                                               double clip_length) {
    std::set<std::string> codes;
    for (const auto& c : classes) codes.insert(c.code);
    for (const auto& [code, value] : overrides.per_code)
        if (!codes.count(code)) throw Error(errc::unknown_class_override, code);

    std::vector<Detection> dets;
    for (const auto& row : rows) {
        const std::size_t index = spectro::clip_index_of(row.clip_id);
        const std::string stem = spectro::clip_stem_of(row.clip_id);
        for (std::size_t k = 0; k < classes.size() && k < row.scores.size(); ++k) {
            const double threshold = overrides.lookup(classes[k].code)
                                         .value_or(classes[k].threshold);
            if (row.scores[k] >= threshold) {
                dets.push_back({classes[k].code, row.clip_id, stem,
                                static_cast<double>(index) * clip_length, row.scores[k],
                                threshold});
            }
        }
    }
    std::sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
        if (a.class_code != b.class_code) return a.class_code < b.class_code;
        if (a.score != b.score) return a.score > b.score;
        return a.clip_id < b.clip_id;
    });
    return dets;
}

// Merge score tables produced by parallel or partial runs. All parts must
// carry the identical header; clip ids must be globally unique.
inline classify::ScoreTable combine_parts(const std::vector<std::filesystem::path>& part_paths) {
    classify::ScoreTable merged;
    bool first = true;
    std::set<std::string> seen;
    for (const auto& path : part_paths) {
        auto part = classify::read_scores(path);
        if (first) {
            merged.codes = part.codes;
            first = false;
        } else if (part.codes != merged.codes) {
            std::size_t i = 0;
            while (i < part.codes.size() && i < merged.codes.size() &&
                   part.codes[i] == merged.codes[i])
                ++i;
            std::string offending = i < part.codes.size() ? part.codes[i]
                                    : i < merged.codes.size() ? merged.codes[i]
                                                              : "<missing>";
            throw Error(errc::header_mismatch,
                        "column '" + offending + "' in " + path.string());
        }
        for (auto& row : part.rows) {
            if (!seen.insert(row.clip_id).second)
                throw Error(errc::duplicate_clip_id, row.clip_id);
            merged.rows.push_back(std::move(row));
        }
    }
    std::sort(merged.rows.begin(), merged.rows.end(),
              [](const classify::ScoreRow& a, const classify::ScoreRow& b) {
                  return a.clip_id < b.clip_id;
              });
    return merged;
}

// Group detections into station-days. A clip belongs to the calendar date
// of (file start_time + clip offset). Sources whose inventory record has
// no usable start time cannot be dated and are left out of the summary;
// their detections still exist in the detections table.
inline std::vector<SummaryRow> summarize(const std::vector<Detection>& dets,
                                         const inventory::Inventory& inv,
                                         const std::vector<classify::DetectionClass>&,
                                         const std::map<std::string, std::uint64_t>& clip_counts,
                                         double clip_length) {
    std::map<std::string, const inventory::FileRecord*> by_stem;
    for (const auto& rec : inv.records)
        by_stem.emplace(spectro::source_stem(rec.path), &rec);

    for (const auto& d : dets)
        if (!by_stem.count(d.source)) throw Error(errc::source_not_in_inventory, d.source);

    using StationDay = std::tuple<std::string, std::string, std::chrono::sys_days>;

    // Clips scored per station-day, derived from per-source clip counts.
    std::map<StationDay, std::uint64_t> clips_per_day;
    for (const auto& [source, count] : clip_counts) {
        auto it = by_stem.find(source);
        if (it == by_stem.end() || !it->second->start_time) continue;
        const auto& rec = *it->second;
        for (std::uint64_t i = 0; i < count; ++i) {
            auto t = *rec.start_time + std::chrono::seconds(static_cast<std::int64_t>(
                                           static_cast<double>(i) * clip_length));
            StationDay key{rec.site.value_or(inventory::kUnknownField),
                           rec.station.value_or(inventory::kUnknownField),
                           std::chrono::floor<std::chrono::days>(t)};
            ++clips_per_day[key];
        }
    }

    std::map<std::pair<StationDay, std::string>, std::uint64_t> det_counts;
    for (const auto& d : dets) {
        const auto& rec = *by_stem.at(d.source);
        if (!rec.start_time) continue;
        auto t = *rec.start_time +
                 std::chrono::seconds(static_cast<std::int64_t>(d.start));
        StationDay key{rec.site.value_or(inventory::kUnknownField),
                       rec.station.value_or(inventory::kUnknownField),
                       std::chrono::floor<std::chrono::days>(t)};
        ++det_counts[{key, d.class_code}];
    }

    std::vector<SummaryRow> out;
    for (const auto& [key, n] : det_counts) {
        const auto& [day, code] = key;
        SummaryRow row;
        row.site = std::get<0>(day);
        row.station = std::get<1>(day);
        row.date = CivilDate{std::get<2>(day)};
        row.class_code = code;
        row.n_detections = n;
        auto it = clips_per_day.find(day);
        row.n_clips = it != clips_per_day.end() ? it->second : n;
        out.push_back(std::move(row));
    }
    // std::map iteration already yields (site, station, date, class) order.
    return out;
}

inline const char* kDetectionsHeader = "class,clip_id,source,start_s,score,threshold";
inline const char* kSummaryHeader = "site,station,date,class,n_detections,n_clips";

inline void write_detections(const std::vector<Detection>& dets,
                             const std::filesystem::path& out_path) {
    csv::Writer w(out_path.string());
    w.raw(std::string(kDetectionsHeader) + "\n");
    for (const auto& d : dets)
        w.row({d.class_code, d.clip_id, d.source, csv::render_fixed(d.start, 1),
               csv::render_fixed(d.score, 4), csv::render_fixed(d.threshold_used, 4)});
    w.close();
}

inline std::vector<Detection> read_detections(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    if (lines.empty() || lines[0] != kDetectionsHeader)
        throw Error(errc::schema_mismatch, "expected detections header in " + path.string());
    std::vector<Detection> dets;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto f = csv::split_row(lines[i], line_no);
        if (f.size() != 6)
            throw Error(errc::row_parse_failure,
                        "expected 6 fields in line " + std::to_string(line_no));
        dets.push_back({f[0], f[1], f[2], csv::parse_double(f[3], line_no, "start_s"),
                        csv::parse_double(f[4], line_no, "score"),
                        csv::parse_double(f[5], line_no, "threshold")});
    }
    return dets;
}

inline void write_summary(const std::vector<SummaryRow>& rows,
                          const std::filesystem::path& out_path) {
    csv::Writer w(out_path.string());
    w.raw(std::string(kSummaryHeader) + "\n");
    for (const auto& r : rows)
        w.row({r.site, r.station, format_date(r.date), r.class_code,
               std::to_string(r.n_detections), std::to_string(r.n_clips)});
    w.close();
}

inline std::vector<SummaryRow> read_summary(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    if (lines.empty() || lines[0] != kSummaryHeader)
        throw Error(errc::schema_mismatch, "expected summary header in " + path.string());
    std::vector<SummaryRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto f = csv::split_row(lines[i], line_no);
        if (f.size() != 6)
            throw Error(errc::row_parse_failure,
                        "expected 6 fields in line " + std::to_string(line_no));
        auto date = parse_date(f[2]);
        if (!date)
            throw Error(errc::row_parse_failure, "bad date in line " + std::to_string(line_no));
        rows.push_back({f[0], f[1], *date, f[3], csv::parse_count(f[4], line_no, "n_detections"),
                        csv::parse_count(f[5], line_no, "n_clips")});
    }
    return rows;
}

} // namespace pamflow::detect
