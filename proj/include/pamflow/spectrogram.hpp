#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "pamflow/audio_io.hpp"
#include "pamflow/errors.hpp"
#include "pamflow/fft.hpp"
#include "pamflow/png_io.hpp"

namespace pamflow::spectro {

struct SpectroConfig {
    std::uint32_t working_rate = 16000; // Hz
    double clip_length = 12.0;          // seconds
    std::size_t n_fft = 512;            // Hann window size, power of two
    std::size_t target_width = 1000;    // tile columns
    double db_floor = -80.0;
    double db_ceiling = 0.0;
    double min_tail = 1.0; // seconds of real content required to keep a partial clip

    std::size_t n_bins() const { return n_fft / 2 + 1; }
    std::size_t segment_samples() const {
        return static_cast<std::size_t>(std::llround(clip_length * working_rate));
    }

    void validate() const {
        if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0)
            throw Error(errc::value_out_of_range, "n_fft must be a power of two");
        if (db_floor >= db_ceiling)
            throw Error(errc::value_out_of_range, "db_floor must be below db_ceiling");
        if (!(min_tail > 0.0) || min_tail > clip_length)
            throw Error(errc::value_out_of_range, "min_tail must be in (0, clip_length]");
        if (working_rate == 0 || clip_length <= 0.0 || target_width == 0)
            throw Error(errc::value_out_of_range, "invalid spectrogram config");
        if (segment_samples() < target_width)
            throw Error(errc::value_out_of_range,
                        "clip too short for target_width columns");
    }
};

// One fixed-length window of a source file. `length` is always the
// configured clip length; `pad` is how much of it is appended silence.
struct Clip {
    std::string source; // relative path of the parent file
    std::size_t index = 0;
    double start = 0.0;
    double length = 0.0;
    double pad = 0.0;
};

inline std::string source_stem(const std::string& source) {
    return std::filesystem::path(source).stem().string();
}

inline std::string clip_id(const Clip& clip) {
    char suffix[24];
    std::snprintf(suffix, sizeof(suffix), "_part%03zu", clip.index + 1);
    return source_stem(clip.source) + suffix;
}

// Recover the 0-based clip index from an id produced by clip_id().
inline std::size_t clip_index_of(const std::string& id) {
    auto pos = id.rfind("_part");
    if (pos == std::string::npos || pos + 5 >= id.size())
        throw Error(errc::row_parse_failure, "clip id '" + id + "' has no _part suffix");
    std::size_t n = 0;
    for (std::size_t i = pos + 5; i < id.size(); ++i) {
        char c = id[i];
        if (c < '0' || c > '9')
            throw Error(errc::row_parse_failure, "clip id '" + id + "' has a bad part number");
        n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    if (n == 0) throw Error(errc::row_parse_failure, "clip id '" + id + "' has part number 0");
    return n - 1;
}

inline std::string clip_stem_of(const std::string& id) {
    auto pos = id.rfind("_part");
    if (pos == std::string::npos)
        throw Error(errc::row_parse_failure, "clip id '" + id + "' has no _part suffix");
    return id.substr(0, pos);
}

// Tile full clips from offset zero; keep a trailing partial clip only
// when its real content is at least min_tail, zero-padding it to the
// full length. The loop form is robust to the usual floating-point
// wobble around exact multiples of the clip length.
inline std::vector<Clip> segment(const audio::AudioMetadata& meta, const SpectroConfig& cfg) {
    const double d = meta.duration;
    const double L = cfg.clip_length;

    std::size_t full = static_cast<std::size_t>(std::max(0.0, std::floor(d / L)));
    while ((static_cast<double>(full) + 1.0) * L <= d) ++full;
    while (full > 0 && static_cast<double>(full) * L > d) --full;

    std::vector<Clip> clips;
    for (std::size_t i = 0; i < full; ++i)
        clips.push_back({meta.path.generic_string(), i, i * L, L, 0.0});

    const double tail = d - static_cast<double>(full) * L;
    if (tail >= cfg.min_tail)
        clips.push_back({meta.path.generic_string(), full, full * L, L, L - tail});
    return clips;
}

// Power spectrogram of one clip-length sample segment: periodic-Hann
// windowed frames of n_fft samples, hop = floor(len / target_width),
// exactly target_width frames, power = squared DFT magnitude over bins
// 0..n_fft/2. Frames reaching past the end of the segment read zeros.
// Row-major: grid[frame * n_bins + bin].
inline std::vector<double> stft_power(const std::vector<double>& segment,
                                      const SpectroConfig& cfg) {
    const std::size_t n = cfg.n_fft;
    const std::size_t bins = cfg.n_bins();
    const std::size_t width = cfg.target_width;
    const std::size_t hop = segment.size() / width;
    if (hop == 0) throw Error(errc::shape_mismatch, "segment shorter than target_width");

    std::vector<double> window(n);
    for (std::size_t i = 0; i < n; ++i)
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(n));

    dsp::Fft fft(n);
    std::vector<std::complex<double>> frame(n);
    std::vector<double> grid(width * bins);

    for (std::size_t f = 0; f < width; ++f) {
        const std::size_t off = f * hop;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = off + i;
            frame[i] = {k < segment.size() ? segment[k] * window[i] : 0.0, 0.0};
        }
        fft.transform(frame);
        for (std::size_t b = 0; b < bins; ++b) grid[f * bins + b] = std::norm(frame[b]);
    }
    return grid;
}

// The spectrogram image of one clip. Rows are frequency bins with row 0
// the lowest; every intensity is in [0, 1].
struct Tile {
    Clip clip;
    std::size_t height = 0; // n_bins
    std::size_t width = 0;  // target_width
    std::vector<float> intensities; // row-major [row * width + col]

    float at(std::size_t row, std::size_t col) const { return intensities[row * width + col]; }
};

// Map power to intensity: dB relative to the tile maximum, clamped to
// [db_floor, db_ceiling], scaled linearly onto [0, 1]. An all-zero grid
// maps to uniform zero.
inline Tile to_tile(const std::vector<double>& power_grid, const Clip& clip,
                    const SpectroConfig& cfg) {
    const std::size_t bins = cfg.n_bins();
    const std::size_t width = cfg.target_width;
    if (power_grid.size() != bins * width)
        throw Error(errc::shape_mismatch, "power grid has unexpected shape");

    Tile tile;
    tile.clip = clip;
    tile.height = bins;
    tile.width = width;
    tile.intensities.assign(bins * width, 0.0f);

    const double max_power = *std::max_element(power_grid.begin(), power_grid.end());
    if (max_power <= 0.0) return tile;

    const double span = cfg.db_ceiling - cfg.db_floor;
    for (std::size_t f = 0; f < width; ++f) {
        for (std::size_t b = 0; b < bins; ++b) {
            const double p = power_grid[f * bins + b];
            const double db = p > 0.0 ? 10.0 * std::log10(p / max_power)
                                      : cfg.db_floor; // silence clamps to the floor
            const double clamped = std::clamp(db, cfg.db_floor, cfg.db_ceiling);
            tile.intensities[b * width + f] =
                static_cast<float>((clamped - cfg.db_floor) / span);
        }
    }
    return tile;
}

// 8-bit grayscale PNG, conventional spectrogram orientation: image row 0
// is the highest frequency.
inline void write_tile_png(const Tile& tile, const std::filesystem::path& out_path) {
    std::vector<std::uint8_t> pixels(tile.height * tile.width);
    for (std::size_t r = 0; r < tile.height; ++r) {
        const std::size_t src = tile.height - 1 - r;
        for (std::size_t c = 0; c < tile.width; ++c)
            pixels[r * tile.width + c] = static_cast<std::uint8_t>(
                std::lround(tile.at(src, c) * 255.0f));
    }
    png::write_gray8(out_path.string(), pixels, tile.width, tile.height);
}

// Cut one clip's samples out of a working-rate buffer, zero-padding past
// the end of the recording.
inline std::vector<double> clip_segment(const audio::SampleBuffer& buf, const Clip& clip,
                                        const SpectroConfig& cfg) {
    const std::size_t len = cfg.segment_samples();
    const auto begin = static_cast<std::int64_t>(std::llround(clip.start * buf.sample_rate));
    std::vector<double> seg(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        const std::int64_t k = begin + static_cast<std::int64_t>(i);
        if (k >= 0 && k < static_cast<std::int64_t>(buf.samples.size()))
            seg[i] = buf.samples[static_cast<std::size_t>(k)];
    }
    return seg;
}

} // namespace pamflow::spectro
