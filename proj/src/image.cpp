#include "lsbmark/image.hpp"

#include <string>

namespace lsbmark {

GrayImage::GrayImage(std::uint32_t w, std::uint32_t h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1) {
        throw ParamError("image dimensions must be at least 1x1, got " + std::to_string(w) + "x" +
                         std::to_string(h));
    }
    pixels.assign(std::uint64_t(w) * h, fill);
}

std::uint8_t GrayImage::at(std::uint32_t row, std::uint32_t col) const {
    if (row >= height || col >= width) {
        throw BoundsError("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") outside " + std::to_string(width) + "x" + std::to_string(height) +
                          " image");
    }
    return pixels[std::uint64_t(row) * width + col];
}

void GrayImage::set(std::uint32_t row, std::uint32_t col, std::uint8_t value) {
    if (row >= height || col >= width) {
        throw BoundsError("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") outside " + std::to_string(width) + "x" + std::to_string(height) +
                          " image");
    }
    pixels[std::uint64_t(row) * width + col] = value;
}

LinearIndex linear_index(const GrayImage& img, std::uint32_t row, std::uint32_t col) {
    if (row >= img.height || col >= img.width) {
        throw BoundsError("coordinates (" + std::to_string(row) + ", " + std::to_string(col) +
                          ") outside " + std::to_string(img.width) + "x" +
                          std::to_string(img.height) + " image");
    }
    return LinearIndex{1 + std::uint64_t(row) * img.width + col};
}

}  // namespace lsbmark
