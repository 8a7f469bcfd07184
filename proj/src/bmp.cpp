#include "lsbmark/bmp.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace lsbmark {

namespace {

constexpr std::size_t kFileHeaderSize = 14;
constexpr std::size_t kInfoHeaderSize = 40;
constexpr std::size_t kPaletteSize = 256 * 4;
constexpr std::size_t kPixelDataOffset = kFileHeaderSize + kInfoHeaderSize + kPaletteSize;

std::uint32_t row_stride(std::uint32_t width) {
    return (width + 3u) & ~3u;
}

std::uint16_t read_u16(const std::vector<std::uint8_t>& d, std::size_t off) {
    return std::uint16_t(d[off] | (d[off + 1] << 8));
}

std::uint32_t read_u32(const std::vector<std::uint8_t>& d, std::size_t off) {
    return std::uint32_t(d[off]) | (std::uint32_t(d[off + 1]) << 8) |
           (std::uint32_t(d[off + 2]) << 16) | (std::uint32_t(d[off + 3]) << 24);
}

std::int32_t read_i32(const std::vector<std::uint8_t>& d, std::size_t off) {
    return std::int32_t(read_u32(d, off));
}

void put_u16(std::vector<std::uint8_t>& d, std::size_t off, std::uint16_t v) {
    d[off] = std::uint8_t(v);
    d[off + 1] = std::uint8_t(v >> 8);
}

void put_u32(std::vector<std::uint8_t>& d, std::size_t off, std::uint32_t v) {
    d[off] = std::uint8_t(v);
    d[off + 1] = std::uint8_t(v >> 8);
    d[off + 2] = std::uint8_t(v >> 16);
    d[off + 3] = std::uint8_t(v >> 24);
}

}  // namespace

GrayImage read_bmp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on " + path.string());
    }

    if (data.size() < kFileHeaderSize + kInfoHeaderSize) {
        throw FormatError(path.string() + ": too small to hold BMP headers");
    }
    if (data[0] != 'B' || data[1] != 'M') {
        throw FormatError(path.string() + ": missing BM signature");
    }
    const std::uint32_t pixel_offset = read_u32(data, 10);
    const std::uint32_t info_size = read_u32(data, 14);
    if (info_size < kInfoHeaderSize) {
        // BITMAPCOREHEADER and friends
        throw UnsupportedError(path.string() + ": info header of " + std::to_string(info_size) +
                               " bytes not supported");
    }
    const std::int32_t raw_width = read_i32(data, 18);
    const std::int32_t raw_height = read_i32(data, 22);
    if (raw_width < 1 || raw_height == 0) {
        throw FormatError(path.string() + ": bad dimensions " + std::to_string(raw_width) + "x" +
                          std::to_string(raw_height));
    }
    const bool top_down = raw_height < 0;
    const std::uint32_t width = std::uint32_t(raw_width);
    const std::uint32_t height = std::uint32_t(top_down ? -std::int64_t(raw_height) : raw_height);

    const std::uint16_t bit_count = read_u16(data, 28);
    if (bit_count != 8) {
        throw UnsupportedError(path.string() + ": " + std::to_string(bit_count) +
                               " bits per pixel, only 8 supported");
    }
    const std::uint32_t compression = read_u32(data, 30);
    if (compression != 0) {
        throw UnsupportedError(path.string() + ": compression " + std::to_string(compression) +
                               ", only uncompressed supported");
    }
    if (pixel_offset < kFileHeaderSize + info_size || pixel_offset > data.size()) {
        throw FormatError(path.string() + ": pixel data offset " + std::to_string(pixel_offset) +
                          " out of range");
    }

    const std::uint64_t stride = row_stride(width);
    const std::uint64_t need = stride * height;
    if (pixel_offset + need > data.size()) {
        throw TruncatedError(path.string() + ": pixel data truncated, need " +
                             std::to_string(need) + " bytes at offset " +
                             std::to_string(pixel_offset));
    }

    GrayImage img(width, height);
    for (std::uint32_t row = 0; row < height; ++row) {
        const std::uint32_t file_row = top_down ? row : height - 1 - row;
        const std::uint8_t* src = data.data() + pixel_offset + std::uint64_t(file_row) * stride;
        std::copy(src, src + width, img.pixels.begin() + std::uint64_t(row) * width);
    }
    return img;
}

void write_bmp(const GrayImage& img, const std::filesystem::path& path) {
    if (img.width < 1 || img.height < 1 || img.pixels.size() != img.pixel_count()) {
        throw ParamError("invalid image passed to write_bmp");
    }
    const std::uint32_t stride = row_stride(img.width);
    const std::uint64_t pixel_bytes = std::uint64_t(stride) * img.height;
    const std::uint64_t file_size = kPixelDataOffset + pixel_bytes;

    std::vector<std::uint8_t> out(file_size, 0);
    out[0] = 'B';
    out[1] = 'M';
    put_u32(out, 2, std::uint32_t(file_size));
    put_u32(out, 10, std::uint32_t(kPixelDataOffset));
    put_u32(out, 14, std::uint32_t(kInfoHeaderSize));
    put_u32(out, 18, img.width);
    put_u32(out, 22, img.height);  // positive: bottom-up
    put_u16(out, 26, 1);           // planes
    put_u16(out, 28, 8);           // bits per pixel
    put_u32(out, 30, 0);           // BI_RGB
    put_u32(out, 34, std::uint32_t(pixel_bytes));
    put_u32(out, 38, 3780);  // ~96 dpi, matches common writers
    put_u32(out, 42, 3780);
    put_u32(out, 46, 256);
    put_u32(out, 50, 256);

    for (std::uint32_t i = 0; i < 256; ++i) {
        const std::size_t off = kFileHeaderSize + kInfoHeaderSize + i * 4;
        out[off] = out[off + 1] = out[off + 2] = std::uint8_t(i);  // B, G, R identical
        out[off + 3] = 0;
    }

    for (std::uint32_t row = 0; row < img.height; ++row) {
        const std::uint32_t file_row = img.height - 1 - row;
        std::copy(img.pixels.begin() + std::uint64_t(row) * img.width,
                  img.pixels.begin() + std::uint64_t(row) * img.width + img.width,
                  out.begin() + kPixelDataOffset + std::uint64_t(file_row) * stride);
    }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    os.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
    if (!os) {
        throw IoError("write failure on " + path.string());
    }
}

}  // namespace lsbmark
