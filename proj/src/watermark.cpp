#include "lsbmark/watermark.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace lsbmark {

namespace {

constexpr std::uint64_t kHeaderPixels = 16;
constexpr std::size_t kMaxPayload = 65535;

std::uint64_t region_length(std::uint64_t pixel_count, std::uint64_t start) {
    return pixel_count - (start - 1);
}

// Payload bytes one region can hold after its 16-pixel header.
std::uint64_t region_capacity(std::uint64_t region_len) {
    return region_len < kHeaderPixels ? 0 : (region_len - kHeaderPixels) / 8;
}

void validate_recipe(std::uint64_t pixel_count, const EmbedRecipe& recipe) {
    if (pixel_count == 0) {
        throw CapacityError("empty image cannot carry a watermark");
    }
    if (recipe.auto_overflow &&
        (recipe.scheme == Scheme::lee || recipe.planes != PlaneSet::of({1}))) {
        throw ParamError("auto overflow requires the proposed or plain scheme with plane set {1}");
    }
    if (recipe.scheme == Scheme::lee) {
        if (!recipe.seed) {
            throw ParamError("lee scheme requires a seed");
        }
        if (pixel_count < kHeaderPixels) {
            throw CapacityError("image too small for the 16-pixel length header");
        }
        return;  // start and planes are ignored
    }
    if (recipe.start.value < 1 || recipe.start.value > pixel_count) {
        throw BoundsError("start index " + std::to_string(recipe.start.value) + " outside [1, " +
                          std::to_string(pixel_count) + "]");
    }
    if (recipe.scheme == Scheme::proposed && recipe.start.value % 2 == 0) {
        throw ParamError("proposed scheme requires an odd start index, got " +
                         std::to_string(recipe.start.value));
    }
    if (region_length(pixel_count, recipe.start.value) < kHeaderPixels) {
        throw CapacityError("image region too small for the 16-pixel length header");
    }
}

int payload_bit(const std::uint8_t* bytes, std::uint64_t bit_index) {
    return (bytes[bit_index / 8] >> (7 - bit_index % 8)) & 1;
}

int bit_at(const GrayImage& img, Plane plane, std::uint64_t pos) {
    return get_bit(img.pixels[pos - 1], plane);
}

void put_bit(GrayImage& img, Plane plane, std::uint64_t pos, int bit) {
    std::uint8_t& px = img.pixels[pos - 1];
    px = set_bit(px, plane, bit);
}

void write_header(GrayImage& img, Plane plane, std::uint64_t start, std::uint16_t value) {
    for (std::uint64_t i = 0; i < kHeaderPixels; ++i) {
        put_bit(img, plane, start + i, (value >> (15 - i)) & 1);
    }
}

std::uint16_t read_header(const GrayImage& img, Plane plane, std::uint64_t start) {
    std::uint16_t value = 0;
    for (std::uint64_t i = 0; i < kHeaderPixels; ++i) {
        value = std::uint16_t((value << 1) | bit_at(img, plane, start + i));
    }
    return value;
}

void embed_region(GrayImage& img, const EmbedRecipe& recipe, const RegionLayout& region,
                  const std::uint8_t* chunk) {
    const std::uint64_t start = recipe.start.value;
    write_header(img, region.plane, start, region.bytes);
    if (region.bytes == 0) {
        return;
    }
    const bool transform = recipe.scheme == Scheme::proposed;
    const std::uint64_t copy_bits = std::uint64_t(region.bytes) * 8;
    for (std::uint64_t c = 0; c < region.copies; ++c) {
        for (std::uint64_t j = 0; j < copy_bits; ++j) {
            int bit = payload_bit(chunk, j);
            std::uint64_t pos = start + kHeaderPixels + c * copy_bits + j;
            if (transform) {
                pos = shift_index(LinearIndex{pos}).value;
                bit = invert(bit);
            }
            put_bit(img, region.plane, pos, bit);
        }
    }
}

struct DecodedRegion {
    std::uint16_t length = 0;
    std::vector<std::vector<int>> copy_bits;  // per copy, 8*length bits
};

DecodedRegion extract_region(const GrayImage& img, const EmbedRecipe& recipe, Plane plane) {
    const std::uint64_t start = recipe.start.value;
    const std::uint64_t rlen = region_length(img.pixel_count(), start);

    DecodedRegion out;
    out.length = read_header(img, plane, start);
    if (out.length == 0) {
        return out;
    }
    if (out.length > region_capacity(rlen)) {
        throw HeaderError("decoded length " + std::to_string(out.length) +
                          " exceeds region capacity of " + std::to_string(region_capacity(rlen)) +
                          " bytes");
    }
    const bool transform = recipe.scheme == Scheme::proposed;
    const std::uint64_t copy_bits = std::uint64_t(out.length) * 8;
    const std::uint64_t copies = (rlen - kHeaderPixels) / copy_bits;
    out.copy_bits.resize(copies);
    for (std::uint64_t c = 0; c < copies; ++c) {
        auto& bits = out.copy_bits[c];
        bits.reserve(copy_bits);
        for (std::uint64_t j = 0; j < copy_bits; ++j) {
            std::uint64_t pos = start + kHeaderPixels + c * copy_bits + j;
            if (transform) {
                pos = shift_index(LinearIndex{pos}).value;
            }
            int bit = bit_at(img, plane, pos);
            bits.push_back(transform ? invert(bit) : bit);
        }
    }
    return out;
}

std::vector<std::uint8_t> pack_bytes(const std::vector<int>& bits) {
    std::vector<std::uint8_t> bytes(bits.size() / 8);
    for (std::size_t k = 0; k < bytes.size(); ++k) {
        std::uint8_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v = std::uint8_t((v << 1) | bits[k * 8 + i]);
        }
        bytes[k] = v;
    }
    return bytes;
}

// Majority vote per bit position; ties go to copy 0. Also counts positions
// where every copy agrees.
std::vector<int> vote(const std::vector<std::vector<int>>& copies, std::uint64_t* agree_positions) {
    const std::size_t nbits = copies.front().size();
    std::vector<int> winner(nbits);
    for (std::size_t j = 0; j < nbits; ++j) {
        std::size_t ones = 0;
        for (const auto& copy : copies) {
            ones += std::size_t(copy[j]);
        }
        const std::size_t zeros = copies.size() - ones;
        if (ones == 0 || zeros == 0) {
            ++*agree_positions;
        }
        winner[j] = ones > zeros ? 1 : (zeros > ones ? 0 : copies[0][j]);
    }
    return winner;
}

ExtractionReport assemble_report(const std::vector<DecodedRegion>& regions) {
    ExtractionReport report;
    std::uint64_t total_bits = 0;
    std::uint64_t agree_positions = 0;
    std::uint64_t full_copies = 0;
    bool any_payload = false;
    for (const auto& region : regions) {
        report.length += region.length;
        if (region.length == 0) {
            continue;
        }
        total_bits += std::uint64_t(region.length) * 8;
        const std::uint64_t n = region.copy_bits.size();
        full_copies = any_payload ? std::min(full_copies, n) : n;
        any_payload = true;
    }
    report.copies.resize(any_payload ? full_copies : 0);
    for (const auto& region : regions) {
        if (region.length == 0) {
            continue;
        }
        for (std::uint64_t c = 0; c < full_copies; ++c) {
            auto bytes = pack_bytes(region.copy_bits[c]);
            report.copies[c].insert(report.copies[c].end(), bytes.begin(), bytes.end());
        }
        auto consensus_bits = vote(region.copy_bits, &agree_positions);
        auto consensus_bytes = pack_bytes(consensus_bits);
        report.consensus.insert(report.consensus.end(), consensus_bytes.begin(),
                                consensus_bytes.end());
    }
    report.agreement = total_bits == 0 ? 1.0 : double(agree_positions) / double(total_bits);
    return report;
}

void embed_lee(GrayImage& img, const Payload& payload, std::uint64_t seed) {
    const auto perm = lee_permutation(seed, img.pixel_count());
    const Plane plane(1);
    const std::uint16_t length = std::uint16_t(payload.size());
    for (std::uint64_t i = 0; i < kHeaderPixels; ++i) {
        put_bit(img, plane, perm[i], (length >> (15 - i)) & 1);
    }
    for (std::uint64_t j = 0; j < std::uint64_t(payload.size()) * 8; ++j) {
        put_bit(img, plane, perm[kHeaderPixels + j], payload_bit(payload.bytes.data(), j));
    }
}

ExtractionReport extract_lee(const GrayImage& img, std::uint64_t seed) {
    const auto perm = lee_permutation(seed, img.pixel_count());
    const Plane plane(1);
    std::uint16_t length = 0;
    for (std::uint64_t i = 0; i < kHeaderPixels; ++i) {
        length = std::uint16_t((length << 1) | bit_at(img, plane, perm[i]));
    }
    ExtractionReport report;
    report.length = length;
    if (length == 0) {
        return report;
    }
    if (length > region_capacity(img.pixel_count())) {
        throw HeaderError("decoded length " + std::to_string(length) +
                          " exceeds region capacity of " +
                          std::to_string(region_capacity(img.pixel_count())) + " bytes");
    }
    std::vector<int> bits(std::uint64_t(length) * 8);
    for (std::uint64_t j = 0; j < bits.size(); ++j) {
        bits[j] = bit_at(img, plane, perm[kHeaderPixels + j]);
    }
    report.copies.push_back(pack_bytes(bits));
    report.consensus = report.copies.front();
    report.agreement = 1.0;
    return report;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::proposed:
            return "proposed";
        case Scheme::plain_lsb:
            return "lsb";
        case Scheme::lee:
            return "lee";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "proposed") {
        return Scheme::proposed;
    }
    if (name == "lsb") {
        return Scheme::plain_lsb;
    }
    if (name == "lee") {
        return Scheme::lee;
    }
    throw ParamError("unknown scheme '" + std::string(name) + "'");
}

Payload Payload::from_bytes(std::vector<std::uint8_t> bytes) {
    if (bytes.size() > kMaxPayload) {
        throw ParamError("payload of " + std::to_string(bytes.size()) +
                         " bytes exceeds the 65535-byte length header limit");
    }
    return Payload{std::move(bytes)};
}

Payload Payload::from_text(std::string_view text) {
    return from_bytes(std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::uint64_t capacity_bytes(std::uint32_t width, std::uint32_t height, const PlaneSet& planes) {
    const std::uint64_t pixel_count = std::uint64_t(width) * height;
    const std::uint64_t per_plane = pixel_count / 8 >= 2 ? pixel_count / 8 - 2 : 0;
    if (per_plane < 1) {
        throw CapacityError("a " + std::to_string(width) + "x" + std::to_string(height) +
                            " image cannot hold the 16-pixel header plus one byte");
    }
    return planes.size() * per_plane;
}

std::vector<RegionLayout> plan_regions(std::uint64_t pixel_count, std::size_t payload_len,
                                       const EmbedRecipe& recipe) {
    validate_recipe(pixel_count, recipe);
    if (payload_len > kMaxPayload) {
        throw ParamError("payload of " + std::to_string(payload_len) +
                         " bytes exceeds the 65535-byte length header limit");
    }

    if (recipe.scheme == Scheme::lee) {
        const std::uint64_t cap = region_capacity(pixel_count);
        if (payload_len > cap) {
            throw CapacityError("payload of " + std::to_string(payload_len) +
                                " bytes exceeds capacity of " + std::to_string(cap) + " bytes");
        }
        return {RegionLayout{Plane(1), std::uint16_t(payload_len), payload_len > 0 ? 1u : 0u}};
    }

    const std::uint64_t rlen = region_length(pixel_count, recipe.start.value);
    const std::uint64_t cap1 = region_capacity(rlen);

    PlaneSet planes = recipe.planes;
    if (recipe.auto_overflow && payload_len > 0 && payload_len >= cap1) {
        // Growing exactly at capacity keeps extraction self-describing: a full
        // plane-1 header always means plane 2 carries a header too.
        planes = PlaneSet::of({1, 2});
    }

    const std::uint64_t total_cap = planes.size() * cap1;
    if (payload_len > total_cap) {
        throw CapacityError("payload of " + std::to_string(payload_len) +
                            " bytes exceeds capacity of " + std::to_string(total_cap) + " bytes");
    }

    std::vector<RegionLayout> regions;
    std::uint64_t remaining = payload_len;
    for (const Plane& plane : planes.planes()) {
        const std::uint64_t chunk = std::min<std::uint64_t>(remaining, cap1);
        remaining -= chunk;
        const std::uint64_t copies = chunk > 0 ? (rlen - kHeaderPixels) / (8 * chunk) : 0;
        regions.push_back(RegionLayout{plane, std::uint16_t(chunk), copies});
    }
    return regions;
}

GrayImage embed(const GrayImage& cover, const Payload& payload, const EmbedRecipe& recipe) {
    if (cover.pixels.size() != cover.pixel_count()) {
        throw ParamError("cover image pixel buffer does not match its dimensions");
    }
    const auto regions = plan_regions(cover.pixel_count(), payload.size(), recipe);
    GrayImage out = cover;
    if (recipe.scheme == Scheme::lee) {
        embed_lee(out, payload, *recipe.seed);
        return out;
    }
    std::size_t offset = 0;
    for (const auto& region : regions) {
        embed_region(out, recipe, region, payload.bytes.data() + offset);
        offset += region.bytes;
    }
    return out;
}

ExtractionReport extract(const GrayImage& img, const EmbedRecipe& recipe) {
    if (img.pixels.size() != img.pixel_count()) {
        throw ParamError("image pixel buffer does not match its dimensions");
    }
    validate_recipe(img.pixel_count(), recipe);
    if (recipe.scheme == Scheme::lee) {
        return extract_lee(img, *recipe.seed);
    }

    const std::uint64_t rlen = region_length(img.pixel_count(), recipe.start.value);
    const std::uint64_t cap1 = region_capacity(rlen);

    std::vector<DecodedRegion> regions;
    regions.push_back(extract_region(img, recipe, recipe.planes.planes()[0]));
    bool read_second = recipe.planes.size() == 2;
    if (recipe.auto_overflow && cap1 > 0 && regions[0].length == cap1) {
        read_second = true;  // a full first plane means the payload overflowed
    }
    if (read_second) {
        const Plane second =
            recipe.planes.size() == 2 ? recipe.planes.planes()[1] : Plane(2);
        regions.push_back(extract_region(img, recipe, second));
    }
    return assemble_report(regions);
}

std::vector<std::uint64_t> lee_permutation(std::uint64_t seed, std::uint64_t n) {
    if (n < 1) {
        throw ParamError("permutation size must be at least 1");
    }
    std::vector<std::uint64_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::uint64_t(1));
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = n - 1; i >= 1; --i) {
        const std::uint64_t j = rng() % (i + 1);
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

}  // namespace lsbmark
