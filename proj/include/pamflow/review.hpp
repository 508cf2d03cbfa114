#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pamflow/audio_io.hpp"
#include "pamflow/csv.hpp"
#include "pamflow/detect.hpp"
#include "pamflow/errors.hpp"
#include "pamflow/spectrogram.hpp"

namespace pamflow::review {

// One ranked apparent detection handed to a human for confirmation.
struct ReviewItem {
    detect::Detection detection;
    std::string clip_audio_path; // relative to the output directory; may be empty
    std::size_t rank = 0;        // 1-based within its class
};

// Keep the top `per_class_cap` detections of each class, ranked by score
// descending with clip_id as the tie break. No cap when nullopt.
inline std::vector<ReviewItem> build_review_set(const std::vector<detect::Detection>& dets,
                                                std::optional<std::uint64_t> per_class_cap) {
    std::map<std::string, std::vector<detect::Detection>> by_class;
    for (const auto& d : dets) by_class[d.class_code].push_back(d);

    std::vector<ReviewItem> items;
    for (auto& [code, list] : by_class) {
        std::sort(list.begin(), list.end(),
                  [](const detect::Detection& a, const detect::Detection& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.clip_id < b.clip_id;
                  });
        const std::size_t keep = per_class_cap
                                     ? std::min<std::size_t>(list.size(), *per_class_cap)
                                     : list.size();
        for (std::size_t i = 0; i < keep; ++i)
            items.push_back({list[i], std::string{}, i + 1});
    }
    return items;
}

// Write one clip as a 16-bit PCM WAV at the source's native rate.
// Reviewers get full-bandwidth audio; the padding region past the end of
// the recording is rendered as digital silence.
inline void extract_clip(const std::filesystem::path& source, const spectro::Clip& clip,
                         const std::filesystem::path& out_path) {
    audio::SampleBuffer buf = audio::decode(source);
    const auto rate = buf.sample_rate;
    const auto begin = static_cast<std::int64_t>(std::llround(clip.start * rate));
    const auto len = static_cast<std::size_t>(std::llround(clip.length * rate));

    std::vector<double> samples(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        const std::int64_t k = begin + static_cast<std::int64_t>(i);
        if (k >= 0 && k < static_cast<std::int64_t>(buf.samples.size()))
            samples[i] = buf.samples[static_cast<std::size_t>(k)];
    }
    audio::write_wav16(out_path, samples, rate);
}

inline const char* kManifestSchema = "#schema=1";
inline const char* kManifestHeader =
    "class,rank,clip_id,source,start_s,score,clip_audio_path,verdict";

// The verdict column is left empty for reviewers to fill (Y/N/U), so
// confirmation results re-enter the pipeline as plain CSV.
inline void write_review_manifest(const std::vector<ReviewItem>& items,
                                  const std::filesystem::path& out_path) {
    csv::Writer w(out_path.string());
    w.raw(std::string(kManifestSchema) + "\n");
    w.raw(std::string(kManifestHeader) + "\n");
    for (const auto& it : items)
        w.row({it.detection.class_code, std::to_string(it.rank), it.detection.clip_id,
               it.detection.source, csv::render_fixed(it.detection.start, 1),
               csv::render_fixed(it.detection.score, 4), it.clip_audio_path, ""});
    w.close();
}

inline std::vector<ReviewItem> read_review_manifest(const std::filesystem::path& path) {
    auto lines = csv::read_lines(path.string());
    std::size_t first = 0;
    while (first < lines.size() && !lines[first].empty() && lines[first][0] == '#') ++first;
    if (first >= lines.size() || lines[first] != kManifestHeader)
        throw Error(errc::schema_mismatch, "expected review manifest header in " + path.string());

    std::vector<ReviewItem> items;
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto f = csv::split_row(lines[i], line_no);
        if (f.size() != 8)
            throw Error(errc::row_parse_failure,
                        "expected 8 fields in line " + std::to_string(line_no));
        ReviewItem item;
        item.detection.class_code = f[0];
        item.rank = csv::parse_count(f[1], line_no, "rank");
        item.detection.clip_id = f[2];
        item.detection.source = f[3];
        item.detection.start = csv::parse_double(f[4], line_no, "start_s");
        item.detection.score = csv::parse_double(f[5], line_no, "score");
        item.clip_audio_path = f[6];
        items.push_back(std::move(item));
    }
    return items;
}

} // namespace pamflow::review
