#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

#include "pamflow/errors.hpp"

namespace pamflow::png {

namespace detail {

inline void put_be32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
    out.push_back(static_cast<unsigned char>(v & 0xFF));
}

inline void put_chunk(std::vector<unsigned char>& out, const char type[4],
                      const std::vector<unsigned char>& data) {
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    std::uint32_t crc = static_cast<std::uint32_t>(
        ::crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
    put_be32(out, crc);
}

} // namespace detail

// Encode an 8-bit grayscale image, rows top to bottom. The container is
// assembled here; the IDAT stream is zlib-deflated scanlines with filter
// type 0 on every row.
inline void write_gray8(const std::string& path, const std::vector<std::uint8_t>& pixels,
                        std::size_t width, std::size_t height) {
    if (pixels.size() != width * height)
        throw Error(errc::shape_mismatch, "pixel buffer does not match dimensions");

    std::vector<unsigned char> raw;
    raw.reserve(height * (width + 1));
    for (std::size_t r = 0; r < height; ++r) {
        raw.push_back(0); // filter: none
        raw.insert(raw.end(), pixels.begin() + static_cast<std::ptrdiff_t>(r * width),
                   pixels.begin() + static_cast<std::ptrdiff_t>((r + 1) * width));
    }

    uLongf bound = ::compressBound(static_cast<uLong>(raw.size()));
    std::vector<unsigned char> deflated(bound);
    if (::compress2(deflated.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw Error(errc::io_failure, "zlib compression failed for " + path);
    deflated.resize(bound);

    std::vector<unsigned char> out;
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    out.insert(out.end(), sig, sig + 8);

    std::vector<unsigned char> ihdr;
    detail::put_be32(ihdr, static_cast<std::uint32_t>(width));
    detail::put_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(0); // color type: grayscale
    ihdr.push_back(0); // compression
    ihdr.push_back(0); // filter
    ihdr.push_back(0); // interlace
    detail::put_chunk(out, "IHDR", ihdr);
    detail::put_chunk(out, "IDAT", deflated);
    detail::put_chunk(out, "IEND", {});

    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(errc::io_failure, "cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    f.close();
    if (f.fail()) throw Error(errc::io_failure, "write failed: " + path);
}

} // namespace pamflow::png
