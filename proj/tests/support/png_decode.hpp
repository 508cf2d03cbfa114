#pragma once

// Decode-back harness for tile PNGs, via libpng's simplified API. This is
// an independent decoder: the library assembles its PNG chunks by hand,
// so agreement here validates the whole container.

#include <cstdint>
#include <png.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace pngcheck {

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels; // row-major, row 0 at the top
};

inline GrayImage read_gray8(const std::string& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw std::runtime_error("libpng cannot read " + path + ": " + image.message);
    image.format = PNG_FORMAT_GRAY;

    GrayImage out;
    out.width = image.width;
    out.height = image.height;
    out.pixels.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
        png_image_free(&image);
        throw std::runtime_error("libpng failed on " + path + ": " + image.message);
    }
    return out;
}

} // namespace pngcheck
