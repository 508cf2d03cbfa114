#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pamflow/audio_io.hpp"
#include "pamflow/classify.hpp"
#include "pamflow/csv.hpp"
#include "pamflow/detect.hpp"
#include "pamflow/errors.hpp"
#include "pamflow/inventory.hpp"
#include "pamflow/parallel.hpp"
#include "pamflow/review.hpp"
#include "pamflow/spectrogram.hpp"

namespace pamflow::pipeline {

inline const char* kVersion = "0.1.0";

enum class Mode { process, inventory, spectro, predict, combine, review, cleanup, help };

inline const char* to_string(Mode m) {
    switch (m) {
    case Mode::process: return "process";
    case Mode::inventory: return "inventory";
    case Mode::spectro: return "spectro";
    case Mode::predict: return "predict";
    case Mode::combine: return "combine";
    case Mode::review: return "review";
    case Mode::cleanup: return "cleanup";
    case Mode::help: return "help";
    }
    return "?";
}

struct RunConfig {
    Mode mode = Mode::help;
    std::filesystem::path target_dir;
    std::filesystem::path output_dir; // default <target_dir>/_outputs
    unsigned workers = 1;
    std::filesystem::path class_list;
    std::filesystem::path backend_manifest; // empty: reference backend
    spectro::SpectroConfig spectro;
    detect::ThresholdOverrides overrides;
    std::optional<std::uint64_t> per_class_cap; // nullopt: unlimited
    bool keep_spectrograms = false;
    bool quiet = false;
    std::set<std::string> extensions{"wav"};
};

struct RunReport {
    Mode mode = Mode::help;
    std::uint64_t files_seen = 0;
    std::uint64_t clips_generated = 0;
    std::uint64_t rows_scored = 0;
    std::uint64_t detections = 0;
    double elapsed = 0.0;
    std::vector<std::string> warnings;
};

inline std::string usage() {
    std::ostringstream os;
    os << "pamflow " << kVersion << " - batch acoustic survey processing\n"
       << "\n"
       << "usage: pamflow <mode> <target_dir> [options]\n"
       << "\n"
       << "modes:\n"
       << "  process    inventory, spectrograms, scoring, detection filtering, summary\n"
       << "  inventory  scan the target tree and write inventory.csv\n"
       << "  spectro    render spectrogram tiles to <output>/tiles/\n"
       << "  predict    score clips and write scores.csv\n"
       << "  combine    merge <output>/scores_part*.csv into scores.csv\n"
       << "  review     filter scores, extract review clips, write the manifest\n"
       << "  cleanup    remove tiles and score part files (never audio)\n"
       << "\n"
       << "options:\n"
       << "  -w, --workers N          worker threads (default: CPUs, max 8;\n"
       << "                           env PIPELINE_WORKERS overrides the default)\n"
       << "  -c, --class-list PATH    detection class CSV\n"
       << "  -m, --backend PATH       backend manifest (default: reference backend)\n"
       << "  -o, --output-dir PATH    output directory (default: <target_dir>/_outputs)\n"
       << "  -t, --threshold CODE=V   per-class threshold override; bare V applies to all\n"
       << "  -e, --extensions LIST    comma-separated audio extensions (default: wav)\n"
       << "      --clip-length S      clip length in seconds (default: 12)\n"
       << "      --cap N              review items kept per class (default: unlimited)\n"
       << "  -k, --keep-spectrograms  keep tile PNGs on disk during process/predict\n"
       << "  -q, --quiet              suppress per-file progress lines\n"
       << "  -h, --help               show this message\n";
    return os.str();
}

namespace detail {

inline unsigned parse_workers(const std::string& text, const std::string& origin) {
    unsigned long v = 0;
    try {
        std::size_t pos = 0;
        v = std::stoul(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw Error(errc::usage_error, "bad worker count '" + text + "' (" + origin + ")\n" + usage());
    }
    if (v < 1) throw Error(errc::usage_error, "workers must be >= 1\n" + usage());
    return static_cast<unsigned>(v);
}

inline double parse_threshold_value(const std::string& text) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || v < 0.0 || v > 1.0)
        throw Error(errc::usage_error, "threshold '" + text + "' not in [0,1]\n" + usage());
    return v;
}

} // namespace detail

// Parse CLI arguments (program name excluded). Throws Error(usage_error)
// carrying a synopsis; the caller maps that to exit status 2.
inline RunConfig parse_args(const std::vector<std::string>& argv) {
    RunConfig cfg;
    cfg.workers = default_workers();
    if (const char* env = std::getenv("PIPELINE_WORKERS"))
        cfg.workers = detail::parse_workers(env, "PIPELINE_WORKERS");

    std::vector<std::string> positionals;
    bool clip_length_set = false;

    auto need_value = [&](std::size_t& i, const std::string& flag) -> const std::string& {
        if (i + 1 >= argv.size())
            throw Error(errc::usage_error, flag + " requires a value\n" + usage());
        return argv[++i];
    };

    for (std::size_t i = 0; i < argv.size(); ++i) {
        const std::string& a = argv[i];
        if (a == "-h" || a == "--help") {
            cfg.mode = Mode::help;
            return cfg;
        } else if (a == "-w" || a == "--workers") {
            cfg.workers = detail::parse_workers(need_value(i, a), a);
        } else if (a == "-c" || a == "--class-list") {
            cfg.class_list = need_value(i, a);
        } else if (a == "-m" || a == "--backend") {
            cfg.backend_manifest = need_value(i, a);
        } else if (a == "-o" || a == "--output-dir") {
            cfg.output_dir = need_value(i, a);
        } else if (a == "-t" || a == "--threshold") {
            const std::string& v = need_value(i, a);
            if (auto eq = v.find('='); eq != std::string::npos) {
                std::string code = v.substr(0, eq);
                if (code.empty())
                    throw Error(errc::usage_error, "empty class code in '" + v + "'\n" + usage());
                cfg.overrides.per_code[code] = detail::parse_threshold_value(v.substr(eq + 1));
            } else {
                cfg.overrides.global = detail::parse_threshold_value(v);
            }
        } else if (a == "-e" || a == "--extensions") {
            const std::string& v = need_value(i, a);
            cfg.extensions.clear();
            std::size_t pos = 0;
            while (pos <= v.size()) {
                auto comma = v.find(',', pos);
                std::string ext = v.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
                std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
                    return static_cast<char>(std::tolower(c));
                });
                if (!ext.empty()) cfg.extensions.insert(ext);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            if (cfg.extensions.empty())
                throw Error(errc::usage_error, "empty extension list\n" + usage());
        } else if (a == "--clip-length") {
            const std::string& v = need_value(i, a);
            double secs = 0.0;
            auto res = std::from_chars(v.data(), v.data() + v.size(), secs);
            if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || secs <= 0.0)
                throw Error(errc::usage_error, "bad clip length '" + v + "'\n" + usage());
            cfg.spectro.clip_length = secs;
            clip_length_set = true;
        } else if (a == "--cap") {
            const std::string& v = need_value(i, a);
            std::uint64_t n = 0;
            auto res = std::from_chars(v.data(), v.data() + v.size(), n);
            if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
                throw Error(errc::usage_error, "bad cap '" + v + "'\n" + usage());
            cfg.per_class_cap = n;
        } else if (a == "-k" || a == "--keep-spectrograms") {
            cfg.keep_spectrograms = true;
        } else if (a == "-q" || a == "--quiet") {
            cfg.quiet = true;
        } else if (a.size() > 1 && a[0] == '-') {
            throw Error(errc::usage_error, "unknown flag '" + a + "'\n" + usage());
        } else {
            positionals.push_back(a);
        }
    }

    if (positionals.empty())
        throw Error(errc::usage_error, "missing mode\n" + usage());
    const std::string& mode = positionals[0];
    if (mode == "process") cfg.mode = Mode::process;
    else if (mode == "inventory") cfg.mode = Mode::inventory;
    else if (mode == "spectro") cfg.mode = Mode::spectro;
    else if (mode == "predict") cfg.mode = Mode::predict;
    else if (mode == "combine") cfg.mode = Mode::combine;
    else if (mode == "review") cfg.mode = Mode::review;
    else if (mode == "cleanup") cfg.mode = Mode::cleanup;
    else
        throw Error(errc::usage_error,
                    "unknown mode '" + mode +
                        "' (valid: process inventory spectro predict combine review cleanup)\n" +
                        usage());

    if (positionals.size() < 2)
        throw Error(errc::usage_error, "missing target directory\n" + usage());
    if (positionals.size() > 2)
        throw Error(errc::usage_error, "unexpected argument '" + positionals[2] + "'\n" + usage());
    cfg.target_dir = positionals[1];
    if (cfg.output_dir.empty()) cfg.output_dir = cfg.target_dir / "_outputs";

    // Short clips drag the partial-clip cutoff down with them.
    if (clip_length_set)
        cfg.spectro.min_tail = std::min(cfg.spectro.min_tail, cfg.spectro.clip_length);
    return cfg;
}

namespace detail {

struct FileResult {
    std::vector<classify::ScoreRow> rows;
    std::uint64_t clips = 0;
    std::vector<std::string> warnings;
    bool processed = false;
};

struct Progress {
    std::ostream& err;
    bool quiet;
    std::size_t total;
    std::atomic<std::size_t> done{0};
    std::mutex mu;

    void file_done(const std::string& path, const std::string& note) {
        const std::size_t k = ++done;
        if (quiet) return;
        std::scoped_lock lock(mu);
        err << "[" << k << "/" << total << "] " << path << " " << note << "\n";
    }
};

inline std::vector<const inventory::FileRecord*>
processable_records(const inventory::Inventory& inv, std::vector<std::string>& warnings) {
    std::vector<const inventory::FileRecord*> out;
    std::set<std::string> stems;
    for (const auto& rec : inv.records) {
        if (rec.status == inventory::FileStatus::unreadable || rec.duration <= 0.0) {
            warnings.push_back(rec.path + ": unreadable, skipped");
            continue;
        }
        // clip ids are derived from the stem and must stay unique run-wide
        if (!stems.insert(spectro::source_stem(rec.path)).second) {
            warnings.push_back(rec.path + ": duplicate file stem, skipped");
            continue;
        }
        out.push_back(&rec);
    }
    return out;
}

// Decode -> segment -> tile -> (optionally) write PNGs -> (optionally)
// score, for every processable file, on the worker pool. Results come
// back in inventory order regardless of scheduling.
inline std::vector<FileResult> process_files(const RunConfig& cfg,
                                             const inventory::Inventory& inv,
                                             const std::vector<const inventory::FileRecord*>& records,
                                             const std::vector<classify::DetectionClass>& classes,
                                             classify::Backend* backend, bool write_tiles,
                                             Progress& progress) {
    std::vector<FileResult> results(records.size());
    std::mutex backend_mu;
    const bool serialize_backend = backend && backend->descriptor().single_stream;

    parallel_for(records.size(), cfg.workers, [&](std::size_t i) {
        const auto& rec = *records[i];
        FileResult& res = results[i];
        const std::filesystem::path full = cfg.target_dir / rec.path;
        try {
            auto meta = audio::read_metadata(full);
            meta.path = rec.path; // clips carry target-relative sources
            auto clips = spectro::segment(meta, cfg.spectro);
            auto buf = audio::resample(audio::decode(full), cfg.spectro.working_rate);

            std::vector<spectro::Tile> tiles;
            tiles.reserve(clips.size());
            for (const auto& clip : clips) {
                auto seg = spectro::clip_segment(buf, clip, cfg.spectro);
                tiles.push_back(spectro::to_tile(spectro::stft_power(seg, cfg.spectro), clip,
                                                 cfg.spectro));
            }
            res.clips = tiles.size();

            if (write_tiles && !tiles.empty()) {
                const auto dir = cfg.output_dir / "tiles" / spectro::source_stem(rec.path);
                std::filesystem::create_directories(dir);
                for (const auto& tile : tiles)
                    spectro::write_tile_png(tile, dir / (spectro::clip_id(tile.clip) + ".png"));
            }

            if (backend) {
                if (serialize_backend) {
                    std::scoped_lock lock(backend_mu);
                    res.rows = classify::predict_batch(*backend, tiles, classes);
                } else {
                    res.rows = classify::predict_batch(*backend, tiles, classes);
                }
            }
            res.processed = true;
            progress.file_done(rec.path, "clips=" + std::to_string(res.clips));
        } catch (const Error& e) {
            res.warnings.push_back(rec.path + ": " + e.what());
            progress.file_done(rec.path, std::string("SKIPPED: ") + e.what());
        }
    });
    return results;
}

inline std::vector<classify::DetectionClass> load_classes(const RunConfig& cfg) {
    std::filesystem::path path = cfg.class_list;
    if (path.empty() && !cfg.backend_manifest.empty()) {
        auto manifest = classify::read_backend_manifest(cfg.backend_manifest);
        path = manifest.classes;
    }
    if (path.empty())
        throw Error(errc::usage_error,
                    "this mode needs a class list (-c PATH or a manifest with classes=)\n" +
                        usage());
    return classify::load_class_list(path);
}

inline std::unique_ptr<classify::Backend> make_backend(const RunConfig& cfg,
                                                       std::size_t class_count) {
    if (cfg.backend_manifest.empty())
        return std::make_unique<classify::ReferenceBackend>(cfg.spectro.working_rate,
                                                            class_count);
    auto manifest = classify::read_backend_manifest(cfg.backend_manifest);
    return classify::open_backend(manifest, cfg.spectro.working_rate, class_count);
}

inline inventory::Inventory obtain_inventory(const RunConfig& cfg, bool force_scan) {
    const auto path = cfg.output_dir / "inventory.csv";
    if (!force_scan && std::filesystem::exists(path)) {
        auto inv = inventory::read_inventory(path);
        inv.target_dir = cfg.target_dir.string();
        return inv;
    }
    auto inv = inventory::scan(cfg.target_dir, cfg.extensions);
    std::filesystem::create_directories(cfg.output_dir);
    inventory::write_inventory(inv, path);
    return inv;
}

inline std::map<std::string, std::uint64_t>
clip_counts_of(const std::vector<classify::ScoreRow>& rows) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& r : rows) ++counts[spectro::clip_stem_of(r.clip_id)];
    return counts;
}

// Detection filtering + summary + review manifest from a scored table.
// Returns the number of detections. `extract` embeds review audio.
inline std::uint64_t detection_stage(const RunConfig& cfg,
                                     const std::vector<classify::ScoreRow>& rows,
                                     const std::vector<classify::DetectionClass>& classes,
                                     const inventory::Inventory& inv, bool extract,
                                     RunReport& report, Progress& progress) {
    auto dets = detect::apply_thresholds(rows, classes, cfg.overrides,
                                         cfg.spectro.clip_length);
    detect::write_detections(dets, cfg.output_dir / "detections.csv");

    auto summary = detect::summarize(dets, inv, classes, clip_counts_of(rows),
                                     cfg.spectro.clip_length);
    detect::write_summary(summary, cfg.output_dir / "summary.csv");

    auto items = review::build_review_set(dets, cfg.per_class_cap);
    if (extract) {
        std::map<std::string, const inventory::FileRecord*> by_stem;
        for (const auto& rec : inv.records)
            by_stem.emplace(spectro::source_stem(rec.path), &rec);

        std::mutex warn_mu;
        parallel_for(items.size(), cfg.workers, [&](std::size_t i) {
            auto& item = items[i];
            auto it = by_stem.find(item.detection.source);
            if (it == by_stem.end()) {
                std::scoped_lock lock(warn_mu);
                report.warnings.push_back(item.detection.clip_id +
                                          ": source not in inventory, clip not extracted");
                return;
            }
            const std::string rel = "review/" + item.detection.class_code + "/" +
                                    item.detection.clip_id + ".wav";
            try {
                spectro::Clip clip;
                clip.source = it->second->path;
                clip.index = spectro::clip_index_of(item.detection.clip_id);
                clip.start = item.detection.start;
                clip.length = cfg.spectro.clip_length;
                std::filesystem::create_directories(
                    (cfg.output_dir / "review" / item.detection.class_code));
                review::extract_clip(cfg.target_dir / it->second->path, clip,
                                     cfg.output_dir / rel);
                item.clip_audio_path = rel;
            } catch (const Error& e) {
                std::scoped_lock lock(warn_mu);
                report.warnings.push_back(item.detection.clip_id + ": " + e.what());
            }
        });
        (void)progress;
    }
    review::write_review_manifest(items, cfg.output_dir / "review_manifest.csv");
    return dets.size();
}

inline void collate(const std::vector<FileResult>& results, RunReport& report,
                    std::vector<classify::ScoreRow>& rows) {
    std::uint64_t processed = 0;
    for (const auto& res : results) {
        report.clips_generated += res.clips;
        report.rows_scored += res.rows.size();
        for (const auto& r : res.rows) rows.push_back(r);
        for (const auto& w : res.warnings) report.warnings.push_back(w);
        if (res.processed) ++processed;
    }
    if (processed == 0)
        throw Error(errc::io_failure, "no file could be processed");
}

inline void cleanup_outputs(const RunConfig& cfg, RunReport& report) {
    namespace fs = std::filesystem;
    const fs::path tiles = cfg.output_dir / "tiles";

    auto is_audio = [&](const fs::path& p) {
        std::string ext = p.extension().string();
        if (ext.empty()) return false;
        ext.erase(ext.begin());
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
            return static_cast<char>(std::tolower(c));
        });
        return cfg.extensions.count(ext) > 0;
    };

    std::error_code ec;
    if (fs::exists(tiles)) {
        std::vector<fs::path> victims;
        for (auto it = fs::recursive_directory_iterator(tiles, ec);
             it != fs::recursive_directory_iterator(); ++it) {
            if (it->is_regular_file(ec)) {
                if (is_audio(it->path())) {
                    report.warnings.push_back(it->path().string() +
                                              ": audio file inside tiles/, left in place");
                    continue;
                }
                victims.push_back(it->path());
            }
        }
        for (const auto& v : victims) fs::remove(v, ec);
        // Drop directories that are now empty, deepest first.
        std::vector<fs::path> dirs{tiles};
        for (auto it = fs::recursive_directory_iterator(tiles, ec);
             it != fs::recursive_directory_iterator(); ++it)
            if (it->is_directory(ec)) dirs.push_back(it->path());
        std::sort(dirs.begin(), dirs.end(),
                  [](const fs::path& a, const fs::path& b) { return a.string() > b.string(); });
        for (const auto& d : dirs)
            if (fs::is_empty(d, ec)) fs::remove(d, ec);
    }

    if (fs::exists(cfg.output_dir)) {
        for (auto& entry : fs::directory_iterator(cfg.output_dir, ec)) {
            if (!entry.is_regular_file(ec)) continue;
            const std::string name = entry.path().filename().string();
            if (name.rfind("scores_part", 0) == 0 && entry.path().extension() == ".csv" &&
                !is_audio(entry.path()))
                fs::remove(entry.path(), ec);
        }
    }
}

} // namespace detail

// Execute one mode. Progress lines go to `err`, the machine-readable DONE
// line to `out`. Per-file failures become warnings; the run only fails
// outright when nothing is processable or outputs cannot be written.
inline RunReport run(const RunConfig& cfg, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    const auto t0 = std::chrono::steady_clock::now();

    RunReport report;
    report.mode = cfg.mode;
    cfg.spectro.validate();
    if (cfg.mode == Mode::help) {
        out << usage();
        return report;
    }

    std::filesystem::create_directories(cfg.output_dir);

    switch (cfg.mode) {
    case Mode::inventory: {
        auto inv = detail::obtain_inventory(cfg, /*force_scan=*/true);
        report.files_seen = inv.records.size();
        break;
    }
    case Mode::spectro:
    case Mode::predict:
    case Mode::process: {
        auto inv = detail::obtain_inventory(cfg, /*force_scan=*/cfg.mode == Mode::process);
        report.files_seen = inv.records.size();

        const bool scoring = cfg.mode != Mode::spectro;
        std::vector<classify::DetectionClass> classes;
        std::unique_ptr<classify::Backend> backend;
        if (scoring) {
            classes = detail::load_classes(cfg);
            backend = detail::make_backend(cfg, classes.size());
        }

        auto records = detail::processable_records(inv, report.warnings);
        if (records.empty()) throw Error(errc::io_failure, "no processable audio files");

        detail::Progress progress{err, cfg.quiet, records.size()};
        const bool write_tiles = cfg.mode == Mode::spectro || cfg.keep_spectrograms;
        auto results = detail::process_files(cfg, inv, records, classes, backend.get(),
                                             write_tiles, progress);

        std::vector<classify::ScoreRow> rows;
        detail::collate(results, report, rows);

        if (scoring) classify::write_scores(rows, classes, cfg.output_dir / "scores.csv");
        if (cfg.mode == Mode::process)
            report.detections = detail::detection_stage(cfg, rows, classes, inv,
                                                        /*extract=*/false, report, progress);
        break;
    }
    case Mode::combine: {
        std::vector<std::filesystem::path> parts;
        std::error_code ec;
        for (auto& entry : std::filesystem::directory_iterator(cfg.output_dir, ec)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("scores_part", 0) == 0 && entry.path().extension() == ".csv")
                parts.push_back(entry.path());
        }
        std::sort(parts.begin(), parts.end());
        if (parts.empty())
            throw Error(errc::io_failure,
                        "no scores_part*.csv under " + cfg.output_dir.string());
        auto merged = detect::combine_parts(parts);
        report.rows_scored = merged.rows.size();
        classify::write_scores(merged.rows, merged.codes, cfg.output_dir / "scores.csv");
        break;
    }
    case Mode::review: {
        auto inv = detail::obtain_inventory(cfg, /*force_scan=*/false);
        report.files_seen = inv.records.size();
        auto classes = detail::load_classes(cfg);

        const auto scores_path = cfg.output_dir / "scores.csv";
        if (!std::filesystem::exists(scores_path))
            throw Error(errc::io_failure,
                        scores_path.string() + " not found; run predict or combine first");
        auto table = classify::read_scores(scores_path);
        if (table.codes != classify::class_codes(classes)) {
            std::size_t i = 0;
            auto codes = classify::class_codes(classes);
            while (i < codes.size() && i < table.codes.size() && codes[i] == table.codes[i]) ++i;
            throw Error(errc::header_mismatch,
                        "scores column '" +
                            (i < table.codes.size() ? table.codes[i] : std::string("<missing>")) +
                            "' does not match the class list");
        }
        report.rows_scored = table.rows.size();

        detail::Progress progress{err, cfg.quiet, table.rows.size()};
        report.detections = detail::detection_stage(cfg, table.rows, classes, inv,
                                                    /*extract=*/true, report, progress);
        break;
    }
    case Mode::cleanup:
        detail::cleanup_outputs(cfg, report);
        break;
    case Mode::help:
        break;
    }

    report.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "DONE files=" << report.files_seen << " clips=" << report.clips_generated
        << " detections=" << report.detections
        << " elapsed_s=" << csv::render_fixed(report.elapsed, 3) << "\n";
    return report;
}

// Full CLI entry: argv excludes the program name. Returns the process
// exit status (0 success, 1 processing failure, 2 usage error).
inline int main_entry(const std::vector<std::string>& argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    try {
        RunConfig cfg = parse_args(argv);
        if (cfg.mode == Mode::help) {
            out << usage();
            return 0;
        }
        auto report = run(cfg, out, err);
        for (const auto& w : report.warnings) err << "warning: " << w << "\n";
        return 0;
    } catch (const Error& e) {
        err << "pamflow: " << e.what() << "\n";
        return e.code() == errc::usage_error ? 2 : 1;
    } catch (const std::exception& e) {
        err << "pamflow: " << e.what() << "\n";
        return 1;
    }
}

} // namespace pamflow::pipeline
