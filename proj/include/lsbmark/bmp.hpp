#pragma once

#include <filesystem>

#include "lsbmark/image.hpp"

namespace lsbmark {

/// Reads an uncompressed 8-bit palettized BMP. Pixel values are the stored
/// palette indices; the palette colors themselves are ignored, so files with
/// non-grayscale palettes load fine. Bottom-up (and top-down) row order is
/// normalized to top-down in memory.
GrayImage read_bmp(const std::filesystem::path& path);

/// Writes an uncompressed 8-bit BMP with the 256-entry grayscale identity
/// palette, rows bottom-up, each row padded to a 4-byte boundary.
/// read_bmp(write_bmp(img)) reproduces img exactly.
void write_bmp(const GrayImage& img, const std::filesystem::path& path);

}  // namespace lsbmark
