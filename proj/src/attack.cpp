#include "lsbmark/attack.hpp"

#include <fstream>
#include <random>
#include <string>

namespace lsbmark {

namespace {

void check_spec_fits(const CropSpec& spec, std::uint32_t width, std::uint32_t height) {
    if (spec.new_width < 1 || spec.new_height < 1) {
        throw ParamError("crop extent must be at least 1x1");
    }
    if (std::uint64_t(spec.offset_col) + spec.new_width > width ||
        std::uint64_t(spec.offset_row) + spec.new_height > height) {
        throw BoundsError("crop of " + std::to_string(spec.new_width) + "x" +
                          std::to_string(spec.new_height) + " at (" +
                          std::to_string(spec.offset_row) + ", " + std::to_string(spec.offset_col) +
                          ") exceeds " + std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

GrayImage crop(const GrayImage& img, const CropSpec& spec) {
    check_spec_fits(spec, img.width, img.height);
    GrayImage out(spec.new_width, spec.new_height);
    for (std::uint32_t r = 0; r < spec.new_height; ++r) {
        const auto src = img.pixels.begin() +
                         std::uint64_t(spec.offset_row + r) * img.width + spec.offset_col;
        std::copy(src, src + spec.new_width, out.pixels.begin() + std::uint64_t(r) * spec.new_width);
    }
    return out;
}

GrayImage remap_cropped(const GrayImage& cropped, const CropSpec& spec,
                        std::uint32_t original_width, std::uint32_t original_height,
                        std::uint8_t fill) {
    if (cropped.width != spec.new_width || cropped.height != spec.new_height) {
        throw BoundsError("cropped image is " + std::to_string(cropped.width) + "x" +
                          std::to_string(cropped.height) + " but the spec says " +
                          std::to_string(spec.new_width) + "x" + std::to_string(spec.new_height));
    }
    check_spec_fits(spec, original_width, original_height);
    GrayImage out(original_width, original_height, fill);
    for (std::uint32_t r = 0; r < spec.new_height; ++r) {
        const auto src = cropped.pixels.begin() + std::uint64_t(r) * cropped.width;
        std::copy(src, src + cropped.width,
                  out.pixels.begin() + std::uint64_t(spec.offset_row + r) * original_width +
                      spec.offset_col);
    }
    return out;
}

GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0)) {
        throw ParamError("noise density must be in [0, 1], got " + std::to_string(density));
    }
    GrayImage out = img;
    std::mt19937_64 rng(seed);
    // 53-bit uniform in [0, 1); spelled out so every platform draws the same.
    const auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
    for (auto& px : out.pixels) {
        if (uniform() < density) {
            px = (rng() & 1) ? 255 : 0;
        }
    }
    return out;
}

DifferenceArray compute_difference(const GrayImage& bmp, const GrayImage& lossy) {
    if (!bmp.same_shape(lossy)) {
        throw ShapeError("image dimensions differ: " + std::to_string(bmp.width) + "x" +
                         std::to_string(bmp.height) + " vs " + std::to_string(lossy.width) + "x" +
                         std::to_string(lossy.height));
    }
    DifferenceArray diff{bmp.width, bmp.height, {}};
    diff.deltas.resize(bmp.pixels.size());
    for (std::size_t i = 0; i < bmp.pixels.size(); ++i) {
        diff.deltas[i] = std::int16_t(int(bmp.pixels[i]) - int(lossy.pixels[i]));
    }
    return diff;
}

GrayImage restore(const GrayImage& lossy, const DifferenceArray& diff) {
    if (lossy.width != diff.width || lossy.height != diff.height) {
        throw ShapeError("difference array is " + std::to_string(diff.width) + "x" +
                         std::to_string(diff.height) + " but the image is " +
                         std::to_string(lossy.width) + "x" + std::to_string(lossy.height));
    }
    GrayImage out = lossy;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        const int v = int(out.pixels[i]) + diff.deltas[i];
        if (v < 0 || v > 255) {
            throw IntegrityError("restored value " + std::to_string(v) + " at pixel " +
                                 std::to_string(i) +
                                 " out of range; difference array does not match this image");
        }
        out.pixels[i] = std::uint8_t(v);
    }
    return out;
}

void write_lsbd(const DifferenceArray& diff, const std::filesystem::path& path) {
    if (diff.deltas.size() != std::uint64_t(diff.width) * diff.height) {
        throw ParamError("difference array size does not match its dimensions");
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    std::vector<std::uint8_t> buf(12 + diff.deltas.size() * 2);
    buf[0] = 'L';
    buf[1] = 'S';
    buf[2] = 'B';
    buf[3] = 'D';
    for (int i = 0; i < 4; ++i) {
        buf[4 + i] = std::uint8_t(diff.width >> (8 * i));
        buf[8 + i] = std::uint8_t(diff.height >> (8 * i));
    }
    for (std::size_t i = 0; i < diff.deltas.size(); ++i) {
        const std::uint16_t v = std::uint16_t(diff.deltas[i]);
        buf[12 + 2 * i] = std::uint8_t(v);
        buf[12 + 2 * i + 1] = std::uint8_t(v >> 8);
    }
    os.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    if (!os) {
        throw IoError("write failure on " + path.string());
    }
}

DifferenceArray read_lsbd(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (data.size() < 12 || data[0] != 'L' || data[1] != 'S' || data[2] != 'B' || data[3] != 'D') {
        throw FormatError(path.string() + ": missing LSBD signature");
    }
    DifferenceArray diff;
    for (int i = 3; i >= 0; --i) {
        diff.width = (diff.width << 8) | data[4 + i];
        diff.height = (diff.height << 8) | data[8 + i];
    }
    if (diff.width < 1 || diff.height < 1) {
        throw FormatError(path.string() + ": bad dimensions");
    }
    const std::uint64_t count = std::uint64_t(diff.width) * diff.height;
    if (data.size() < 12 + count * 2) {
        throw TruncatedError(path.string() + ": expected " + std::to_string(count) +
                             " deltas, data truncated");
    }
    diff.deltas.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint16_t v = std::uint16_t(data[12 + 2 * i] | (data[12 + 2 * i + 1] << 8));
        diff.deltas[i] = std::int16_t(v);
        if (diff.deltas[i] < -255 || diff.deltas[i] > 255) {
            throw FormatError(path.string() + ": delta " + std::to_string(diff.deltas[i]) +
                              " outside [-255, 255]");
        }
    }
    return diff;
}

}  // namespace lsbmark
