#pragma once

// Test-side audio synthesis. Deliberately independent of the library's
// decoder/encoder: files are assembled byte by byte so WAV parsing is
// checked against a second implementation of the format.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace synth {

inline void le16(std::vector<std::uint8_t>& v, std::uint16_t x) {
    v.push_back(static_cast<std::uint8_t>(x & 0xFF));
    v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xFF));
}

inline void le32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x & 0xFF));
    v.push_back(static_cast<std::uint8_t>((x >> 8) & 0xFF));
    v.push_back(static_cast<std::uint8_t>((x >> 16) & 0xFF));
    v.push_back(static_cast<std::uint8_t>((x >> 24) & 0xFF));
}

// Assemble a canonical RIFF/WAVE byte stream. `declared_data_size`
// overrides the data chunk size field when it differs from the actual
// payload (for truncation tests).
inline std::vector<std::uint8_t> wav_bytes(std::uint16_t format_tag, std::uint16_t channels,
                                           std::uint32_t rate, std::uint16_t bits,
                                           const std::vector<std::uint8_t>& payload,
                                           std::int64_t declared_data_size = -1) {
    const std::uint32_t data_size = declared_data_size >= 0
                                        ? static_cast<std::uint32_t>(declared_data_size)
                                        : static_cast<std::uint32_t>(payload.size());
    std::vector<std::uint8_t> out;
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    le32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    le32(out, 16);
    le16(out, format_tag);
    le16(out, channels);
    le32(out, rate);
    le32(out, rate * channels * (bits / 8));
    le16(out, static_cast<std::uint16_t>(channels * (bits / 8)));
    le16(out, bits);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    le32(out, data_size);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("synth: cannot write " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

inline std::vector<std::uint8_t> pcm16_payload(const std::vector<double>& samples) {
    std::vector<std::uint8_t> payload;
    payload.reserve(samples.size() * 2);
    for (double s : samples) {
        double clamped = std::min(1.0, std::max(-1.0, s));
        auto q = static_cast<std::int32_t>(std::llround(clamped * 32768.0));
        q = std::min(32767, std::max(-32768, q));
        le16(payload, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    return payload;
}

inline void write_pcm16(const std::filesystem::path& path, const std::vector<double>& samples,
                        std::uint32_t rate) {
    write_file(path, wav_bytes(1, 1, rate, 16, pcm16_payload(samples)));
}

// Interleave equal-length channels into one 16-bit file.
inline void write_pcm16_stereo(const std::filesystem::path& path,
                               const std::vector<double>& left,
                               const std::vector<double>& right, std::uint32_t rate) {
    std::vector<double> interleaved;
    interleaved.reserve(left.size() * 2);
    for (std::size_t i = 0; i < left.size(); ++i) {
        interleaved.push_back(left[i]);
        interleaved.push_back(right[i]);
    }
    write_file(path, wav_bytes(1, 2, rate, 16, pcm16_payload(interleaved)));
}

inline std::vector<double> sine(double freq, double amp, std::uint32_t rate, double seconds,
                                double phase = 0.0) {
    auto n = static_cast<std::size_t>(std::llround(seconds * rate));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / rate +
                                phase);
    return out;
}

inline std::vector<double> silence(std::uint32_t rate, double seconds) {
    return std::vector<double>(static_cast<std::size_t>(std::llround(seconds * rate)), 0.0);
}

// Add `tone` into `samples` starting at `offset` samples.
inline void mix_at(std::vector<double>& samples, const std::vector<double>& tone,
                   std::size_t offset) {
    for (std::size_t i = 0; i < tone.size() && offset + i < samples.size(); ++i)
        samples[offset + i] += tone[i];
}

} // namespace synth
