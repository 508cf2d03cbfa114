#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "pamflow/errors.hpp"

namespace pamflow::audio {

// Header-derived description of one RIFF/WAVE file.
struct AudioMetadata {
    std::filesystem::path path;
    std::uint32_t sample_rate = 0;
    std::uint16_t channels = 0;
    std::uint16_t bits_per_sample = 0; // 8/16/24/32
    bool float_payload = false;        // 32-bit IEEE float data
    std::uint64_t n_frames = 0;
    double duration = 0.0; // seconds, n_frames / sample_rate

    std::uint64_t payload_offset = 0; // byte offset of the data chunk payload
    std::uint64_t payload_bytes = 0;  // declared size of the data chunk
};

// Mono samples in [-1, 1] at a known rate.
struct SampleBuffer {
    std::vector<double> samples;
    std::uint32_t sample_rate = 0;

    double duration() const {
        return sample_rate ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

namespace detail {

inline std::uint32_t le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t le16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void read_exact(std::ifstream& in, unsigned char* buf, std::size_t n,
                       const std::string& what) {
    in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw Error(errc::malformed_header, "truncated " + what);
}

} // namespace detail

// Parse the RIFF/WAVE header without touching the sample payload. The
// declared data-chunk size is trusted here; decode() is where a payload
// shorter than declared surfaces as PayloadTruncated.
inline AudioMetadata read_metadata(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_failure, "cannot open " + path.string());

    unsigned char pre[12];
    detail::read_exact(in, pre, 12, "RIFF preamble in " + path.string());
    if (std::memcmp(pre, "RIFF", 4) != 0 || std::memcmp(pre + 8, "WAVE", 4) != 0)
        throw Error(errc::malformed_header, path.string() + " is not a RIFF/WAVE file");

    AudioMetadata meta;
    meta.path = path;
    std::uint16_t format_tag = 0;
    bool have_fmt = false, have_data = false;

    while (!(have_fmt && have_data)) {
        unsigned char hdr[8];
        in.read(reinterpret_cast<char*>(hdr), 8);
        if (static_cast<std::size_t>(in.gcount()) != 8) {
            if (in.gcount() == 0 && have_fmt && have_data) break;
            throw Error(errc::malformed_header,
                        "missing " + std::string(have_fmt ? "data" : "fmt") +
                            " chunk in " + path.string());
        }
        std::uint32_t size = detail::le32(hdr + 4);
        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (size < 16)
                throw Error(errc::malformed_header, "fmt chunk too small in " + path.string());
            unsigned char fmt[16];
            detail::read_exact(in, fmt, 16, "fmt chunk in " + path.string());
            format_tag = detail::le16(fmt);
            meta.channels = detail::le16(fmt + 2);
            meta.sample_rate = detail::le32(fmt + 4);
            meta.bits_per_sample = detail::le16(fmt + 14);
            if (size > 16) in.seekg(size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            meta.payload_offset = static_cast<std::uint64_t>(in.tellg());
            meta.payload_bytes = size;
            have_data = true;
            // Skip the payload in case fmt has not appeared yet.
            if (!have_fmt) in.seekg(size + (size & 1), std::ios::cur);
        } else {
            in.seekg(size + (size & 1), std::ios::cur);
        }
        if (!in)
            throw Error(errc::malformed_header, "inconsistent chunk sizes in " + path.string());
    }

    if (meta.channels < 1 || meta.sample_rate == 0)
        throw Error(errc::malformed_header, "invalid fmt fields in " + path.string());

    if (format_tag == 1) {
        if (meta.bits_per_sample != 8 && meta.bits_per_sample != 16 &&
            meta.bits_per_sample != 24 && meta.bits_per_sample != 32)
            throw Error(errc::unsupported_encoding,
                        std::to_string(meta.bits_per_sample) + "-bit PCM in " + path.string());
    } else if (format_tag == 3) {
        if (meta.bits_per_sample != 32)
            throw Error(errc::unsupported_encoding,
                        std::to_string(meta.bits_per_sample) + "-bit float in " + path.string());
        meta.float_payload = true;
    } else {
        throw Error(errc::unsupported_encoding,
                    "format tag " + std::to_string(format_tag) + " in " + path.string());
    }

    std::uint32_t frame_bytes = meta.channels * (meta.bits_per_sample / 8u);
    meta.n_frames = meta.payload_bytes / frame_bytes;
    meta.duration = static_cast<double>(meta.n_frames) / meta.sample_rate;
    return meta;
}

// Decode the full payload to a mono buffer: channels are mixed by
// arithmetic mean, integer PCM is scaled by 1/2^(bits-1), everything is
// clamped to [-1, 1].
inline SampleBuffer decode(const std::filesystem::path& path) {
    AudioMetadata meta = read_metadata(path);

    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_failure, "cannot open " + path.string());
    in.seekg(static_cast<std::streamoff>(meta.payload_offset));

    std::vector<unsigned char> payload(meta.payload_bytes);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    std::uint32_t frame_bytes = meta.channels * (meta.bits_per_sample / 8u);
    std::uint64_t frames_read = static_cast<std::uint64_t>(in.gcount()) / frame_bytes;
    if (frames_read < meta.n_frames)
        throw Error(errc::payload_truncated,
                    path.string() + " holds " + std::to_string(frames_read) + " of " +
                        std::to_string(meta.n_frames) + " declared frames");

    SampleBuffer buf;
    buf.sample_rate = meta.sample_rate;
    buf.samples.resize(meta.n_frames);

    const unsigned bytes = meta.bits_per_sample / 8u;
    const unsigned char* p = payload.data();
    for (std::uint64_t f = 0; f < meta.n_frames; ++f) {
        double acc = 0.0;
        for (unsigned c = 0; c < meta.channels; ++c) {
            const unsigned char* s = p + (f * meta.channels + c) * bytes;
            double v = 0.0;
            if (meta.float_payload) {
                float fv;
                std::memcpy(&fv, s, 4);
                v = std::isfinite(fv) ? fv : 0.0;
            } else if (bytes == 1) {
                v = (static_cast<int>(s[0]) - 128) / 128.0;
            } else if (bytes == 2) {
                std::int16_t iv;
                std::memcpy(&iv, s, 2);
                v = iv / 32768.0;
            } else if (bytes == 3) {
                std::int32_t iv = s[0] | (s[1] << 8) | (s[2] << 16);
                if (iv & 0x800000) iv |= 0xFF000000;
                v = iv / 8388608.0;
            } else {
                std::int32_t iv;
                std::memcpy(&iv, s, 4);
                v = iv / 2147483648.0;
            }
            acc += std::clamp(v, -1.0, 1.0);
        }
        buf.samples[f] = acc / meta.channels;
    }
    return buf;
}

namespace detail {

constexpr int kSincHalfWidth = 32; // kernel half-width in filter taps

inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

// Blackman window over z in [-1, 1].
inline double blackman(double z) {
    return 0.42 + 0.5 * std::cos(std::numbers::pi * z) +
           0.08 * std::cos(2.0 * std::numbers::pi * z);
}

} // namespace detail

// Band-limited rate conversion with a Blackman-windowed sinc kernel.
// The low-pass cutoff sits at the lower of the two Nyquist limits;
// samples outside the input are treated as zero.
inline SampleBuffer resample(const SampleBuffer& buf, std::uint32_t target_rate) {
    if (target_rate == buf.sample_rate) return buf;

    const double ratio = static_cast<double>(target_rate) / buf.sample_rate;
    const auto in_len = static_cast<std::int64_t>(buf.samples.size());
    const auto out_len = static_cast<std::int64_t>(
        std::llround(static_cast<double>(in_len) * ratio));

    SampleBuffer out;
    out.sample_rate = target_rate;
    out.samples.resize(static_cast<std::size_t>(out_len));

    const double scale = std::min(1.0, ratio);           // cutoff relative to input rate
    const double support = detail::kSincHalfWidth / scale; // half-width in input samples

    for (std::int64_t j = 0; j < out_len; ++j) {
        const double t = j / ratio;
        const auto k0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t - support)));
        const auto k1 = std::min<std::int64_t>(in_len - 1,
                                               static_cast<std::int64_t>(std::floor(t + support)));
        double acc = 0.0;
        for (std::int64_t k = k0; k <= k1; ++k) {
            const double u = (k - t) * scale;
            acc += buf.samples[static_cast<std::size_t>(k)] * detail::sinc(u) *
                   detail::blackman(u / detail::kSincHalfWidth);
        }
        out.samples[static_cast<std::size_t>(j)] = std::clamp(acc * scale, -1.0, 1.0);
    }
    return out;
}

// Write mono 16-bit PCM. Quantization is round-to-nearest with the same
// 1/32768 step decode() uses, so write/decode round-trips stay within one
// quantization step.
inline void write_wav16(const std::filesystem::path& path, const std::vector<double>& samples,
                        std::uint32_t sample_rate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_failure, "cannot open " + path.string() + " for writing");

    auto put16 = [&](std::uint16_t v) {
        char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
        out.write(b, 2);
    };
    auto put32 = [&](std::uint32_t v) {
        char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                     static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
        out.write(b, 4);
    };

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    out.write("RIFF", 4);
    put32(36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put32(16);
    put16(1); // PCM
    put16(1); // mono
    put32(sample_rate);
    put32(sample_rate * 2);
    put16(2);
    put16(16);
    out.write("data", 4);
    put32(data_bytes);
    for (double s : samples) {
        auto q = static_cast<std::int32_t>(std::llround(std::clamp(s, -1.0, 1.0) * 32768.0));
        q = std::clamp(q, -32768, 32767);
        put16(static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    out.close();
    if (out.fail()) throw Error(errc::io_failure, "write failed: " + path.string());
}

} // namespace pamflow::audio
