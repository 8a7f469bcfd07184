#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lsbmark/image.hpp"

namespace lsbmark {

/// Sub-rectangle of an image: offsets are 0-based from the top-left.
struct CropSpec {
    std::uint32_t offset_row = 0;
    std::uint32_t offset_col = 0;
    std::uint32_t new_width = 0;
    std::uint32_t new_height = 0;
};

/// Pixelwise original-minus-lossy residual. Restoring the lossy image with
/// it reproduces the original exactly.
struct DifferenceArray {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::int16_t> deltas;  // each in [-255, 255]
};

/// Extracts the spec'd sub-rectangle, bit-identical to the source region.
GrayImage crop(const GrayImage& img, const CropSpec& spec);

/// Places a cropped region back at its original offset on a fill-valued
/// canvas, restoring the original linear position of every surviving pixel.
GrayImage remap_cropped(const GrayImage& cropped, const CropSpec& spec,
                        std::uint32_t original_width, std::uint32_t original_height,
                        std::uint8_t fill);

/// Corrupts each pixel independently with probability `density`; corrupted
/// pixels become 0 or 255 with equal probability. Deterministic for a given
/// seed (std::mt19937_64, 53-bit uniform draws).
GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed);

/// deltas = bmp - lossy, pixelwise.
DifferenceArray compute_difference(const GrayImage& bmp, const GrayImage& lossy);

/// lossy + deltas, pixelwise. Exact inverse of compute_difference on its
/// first argument; results outside [0, 255] mean the difference array does
/// not belong to this image and raise IntegrityError.
GrayImage restore(const GrayImage& lossy, const DifferenceArray& diff);

/// .lsbd difference file: magic "LSBD", u32 LE width, u32 LE height, then
/// width*height i16 LE deltas in row-major order.
void write_lsbd(const DifferenceArray& diff, const std::filesystem::path& path);
DifferenceArray read_lsbd(const std::filesystem::path& path);

}  // namespace lsbmark
