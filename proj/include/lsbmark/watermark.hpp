#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsbmark/image.hpp"
#include "lsbmark/planes.hpp"

namespace lsbmark {

enum class Scheme {
    proposed,   // inverted bits at pair-swapped positions
    plain_lsb,  // same layout, bits stored as-is at their own positions
    lee,        // seed-keyed random positions, single copy, plane 1
};

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);  // "proposed" | "lsb" | "lee"

/// Watermark text as raw bytes. The 16-bit length header caps it at 65535.
struct Payload {
    std::vector<std::uint8_t> bytes;

    static Payload from_bytes(std::vector<std::uint8_t> bytes);
    static Payload from_text(std::string_view text);

    std::size_t size() const { return bytes.size(); }
    std::string as_text() const { return std::string(bytes.begin(), bytes.end()); }
};

/// Everything the extractor must share with the embedder.
struct EmbedRecipe {
    Scheme scheme = Scheme::proposed;
    PlaneSet planes = PlaneSet::of({1});
    /// Grow {1} to {1,2} when the payload fills plane 1. Only valid with
    /// planes == {1}.
    bool auto_overflow = false;
    /// First header pixel, 1-based. The proposed scheme needs an odd start:
    /// with an even one the pair swap would map the first payload position
    /// onto the last header pixel.
    LinearIndex start{1};
    /// Shared key for the lee scheme; ignored by the others.
    std::optional<std::uint64_t> seed;
};

/// How one plane's region is used for a given payload: which chunk of the
/// payload it carries and how many complete copies fit.
struct RegionLayout {
    Plane plane;
    std::uint16_t bytes = 0;
    std::uint64_t copies = 0;
};

/// Whole-image byte capacity: |planes| * (floor(width*height / 8) - 2).
/// Each plane region spends 16 pixels (2 bytes) on its length header.
std::uint64_t capacity_bytes(std::uint32_t width, std::uint32_t height, const PlaneSet& planes);

/// Validates the recipe against the image size and splits the payload across
/// the effective plane regions, lowest plane first. Throws CapacityError when
/// the payload cannot fit.
std::vector<RegionLayout> plan_regions(std::uint64_t pixel_count, std::size_t payload_len,
                                       const EmbedRecipe& recipe);

/// Watermarks a copy of `cover`. Per plane region: a 16-pixel length header
/// (plain bits, MSB first) at `start`, then the chunk's bits replicated
/// back-to-back as complete copies. The proposed scheme stores each payload
/// bit inverted at the pair-swapped position; plain_lsb stores it as-is;
/// lee scatters header and single copy along a seeded permutation.
GrayImage embed(const GrayImage& cover, const Payload& payload, const EmbedRecipe& recipe);

struct ExtractionReport {
    /// Total decoded byte count over all active plane regions.
    std::uint32_t length = 0;
    /// One decoded payload per complete embedded copy.
    std::vector<std::vector<std::uint8_t>> copies;
    /// Per-bit majority vote across copies; ties take copy 0's bit.
    std::vector<std::uint8_t> consensus;
    /// Fraction of payload bit positions on which every copy agrees.
    double agreement = 1.0;
};

/// Inverse of embed. The recipe must match the one used at embed time.
ExtractionReport extract(const GrayImage& img, const EmbedRecipe& recipe);

/// Deterministic bijection on [1, n]: Fisher-Yates driven by std::mt19937_64
/// seeded with `seed`, drawing j = rng() % (i + 1) from i = n-1 down to 1.
/// mt19937_64 is pinned by the C++ standard, so the same seed reproduces the
/// same permutation on every platform.
std::vector<std::uint64_t> lee_permutation(std::uint64_t seed, std::uint64_t n);

}  // namespace lsbmark
