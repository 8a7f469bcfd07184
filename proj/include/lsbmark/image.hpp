#pragma once

#include <cstdint>
#include <vector>

#include "lsbmark/errors.hpp"

namespace lsbmark {

/// 8-bit grayscale raster. Pixels are stored row-major, top row first,
/// regardless of how the source file ordered them.
struct GrayImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(std::uint32_t w, std::uint32_t h, std::uint8_t fill = 0);

    std::uint64_t pixel_count() const { return std::uint64_t(width) * height; }

    std::uint8_t at(std::uint32_t row, std::uint32_t col) const;
    void set(std::uint32_t row, std::uint32_t col, std::uint8_t value);

    bool same_shape(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }
    bool operator==(const GrayImage& other) const = default;
};

/// 1-based row-major pixel position in [1, width*height].
struct LinearIndex {
    std::uint64_t value = 1;

    bool operator==(const LinearIndex& other) const = default;
};

/// 0-based (row, col) to 1-based position: 1 + row*width + col.
LinearIndex linear_index(const GrayImage& img, std::uint32_t row, std::uint32_t col);

}  // namespace lsbmark
